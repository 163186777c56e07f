#pragma once

// JSON and CSV encodings of results. CSV uses '.' decimals, LF endings and 17
// significant digits; JSON objects carry "schema_version": 1 at the top level.

#include <ostream>
#include <string>

#include <json.hpp>

#include "fluxqed/dynamics.hpp"
#include "fluxqed/model.hpp"
#include "fluxqed/optimize.hpp"

namespace fluxqed {

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip text for a double (17 significant digits).
std::string format_number(double value);

void to_json(nlohmann::json& j, const CouplingParams& p);
void from_json(const nlohmann::json& j, CouplingParams& p);
void to_json(nlohmann::json& j, const Probabilities& p);
void from_json(const nlohmann::json& j, Probabilities& p);
void to_json(nlohmann::json& j, const EvolutionTrace& t);
void from_json(const nlohmann::json& j, EvolutionTrace& t);
void to_json(nlohmann::json& j, const OptimizeResult& r);
void from_json(const nlohmann::json& j, OptimizeResult& r);
void to_json(nlohmann::json& j, const SweepGrid& g);
void from_json(const nlohmann::json& j, SweepGrid& g);
void to_json(nlohmann::json& j, const Fig4Annotation& a);
void from_json(const nlohmann::json& j, Fig4Annotation& a);

namespace csv {

inline constexpr const char* kTraceHeader = "t,P1,P2,P3,P4,sum";
inline constexpr const char* kOptimizeHeader =
    "g,gprime,j,threshold,feasible,t0,p1p2,p3,p4,pi_over_gprime,pi_over_2gprime,"
    "abs_t0_minus_pi_over_gprime,abs_t0_minus_pi_over_2gprime";
inline constexpr const char* kSweepHeader = "g,gprime,j,feasible,t0,p3,p1p2";
inline constexpr const char* kFig4TraceHeader = "triple,g,gprime,t,P1,P2,P3,P4,sum";
inline constexpr const char* kFig4AnnotationHeader =
    "triple,g,gprime,threshold,feasible,t0,p1p2,p3,p4,pi_over_gprime,pi_over_2gprime,"
    "abs_t0_minus_pi_over_gprime,abs_t0_minus_pi_over_2gprime,nearest_peak_t,nearest_peak_p3";

void write_trace(std::ostream& os, const EvolutionTrace& trace);
void write_optimize(std::ostream& os, const OptimizeResult& result, int exponent);
void write_sweep(std::ostream& os, const std::vector<SweepGrid>& grids);
void write_fig4_traces(std::ostream& os, const std::vector<Fig4Panel>& panels);
void write_fig4_annotations(std::ostream& os, const std::vector<Fig4Panel>& panels);

}  // namespace csv

}  // namespace fluxqed
