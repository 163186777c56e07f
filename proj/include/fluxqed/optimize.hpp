#pragma once

// Search for measurement times t0 at which the unwanted components P1 + P2 of
// the evolved dark state fall below 10^-j while the |C> population P3 is as
// large as possible, and maps of that search over the (g, g') plane.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "fluxqed/dynamics.hpp"
#include "fluxqed/model.hpp"

namespace fluxqed {

inline constexpr double kDefaultSearchTMax = 200.0;
inline constexpr double kTieTolerance = 1e-9;

struct OptimizeResult {
    CouplingParams params;
    double threshold = 0;
    bool feasible = false;
    double t0 = 0;    // best feasible time, or the time of the smallest residual when infeasible
    double p1p2 = 0;  // P1 + P2 at t0
    double p3 = 0;
    double p4 = 0;
    double pi_over_gprime = 0;     // naive Rabi reference pi/g'
    double pi_over_2gprime = 0;    // bare flip time pi/(2g')

    friend bool operator==(const OptimizeResult&, const OptimizeResult&) = default;
};

struct ScanOptions {
    /// Multiplies the base scan step 0.01 / max(1, g, g').
    double step_scale = 1.0;
};

/// Dense uniform scan of P1 + P2 and P3 on (0, t_max] plus golden-section
/// refinement of every local minimum of P1 + P2. Threshold independent, so one
/// scan serves every exponent of a sweep cell.
class FeasibilityScan {
public:
    FeasibilityScan(const CouplingParams& p, double t_max, ScanOptions options = {});

    /// Best feasible t0 for `threshold`, or an infeasible result carrying the
    /// smallest residual found.
    OptimizeResult best(double threshold) const;

    const SectorEvolution& evolution() const { return evolution_; }
    double step() const { return step_; }
    std::size_t size() const { return times_.size(); }

private:
    struct Dip {
        std::size_t index;  // grid index of the local minimum
        double t;           // refined location
        double residual;    // refined P1 + P2
    };

    double residual_at(double t) const;
    double p3_at(double t) const;
    /// Feasible end of [feasible, infeasible] boundary bracket.
    double boundary(double feasible, double infeasible, double threshold) const;
    double argmax_p3(double lo, double hi) const;
    OptimizeResult make_result(double t, double threshold, bool feasible) const;

    SectorEvolution evolution_;
    double t_max_;
    double step_;
    std::vector<double> times_;
    std::vector<double> residual_;
    std::vector<double> p3_;
    std::vector<Dip> dips_;
};

/// Among t in (0, t_max] with P1 + P2 <= threshold, the t maximizing P3
/// (smallest t among values within kTieTolerance of the maximum).
OptimizeResult find_t0(const CouplingParams& p, double threshold, double t_max = kDefaultSearchTMax,
                       ScanOptions options = {});

/// Inclusive uniform axis; n == 1 requires min == max.
std::vector<double> linspace(double min, double max, int n);

struct SweepGrid {
    std::vector<double> g_values;
    std::vector<double> gprime_values;
    int threshold_exponent = 0;
    /// Row-major: cells[ig * gprime_values.size() + igp].
    std::vector<OptimizeResult> cells;

    const OptimizeResult& cell(std::size_t ig, std::size_t igp) const {
        return cells[ig * gprime_values.size() + igp];
    }
    std::size_t feasible_count() const;
};

struct SweepOptions {
    double t_max = kDefaultSearchTMax;
    ScanOptions scan;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
    /// Called with (cells done, total) after each cell, serialized.
    std::function<void(std::size_t, std::size_t)> progress;
};

/// One grid per exponent j (threshold 10^-j), in the order given.
std::vector<SweepGrid> sweep(const std::vector<double>& g_values, const std::vector<double>& gprime_values,
                             const std::vector<int>& threshold_exponents, const SweepOptions& options = {});

struct Fig4Annotation {
    OptimizeResult result;
    double distance_pi_over_gprime = 0;    // |t0 - pi/g'|
    double distance_pi_over_2gprime = 0;   // |t0 - pi/(2g')|
    double nearest_peak_t = 0;             // closest local maximum of P3 on the trace grid
    double nearest_peak_p3 = 0;
};

struct Fig4Panel {
    EvolutionTrace trace;
    Fig4Annotation annotation;
};

/// The three (g, g') pairs of the fig4 panels: (0.25, 1.89), (2.95, 1.10), (0.60, 1.37).
std::array<CouplingParams, 3> reference_pairs();

std::vector<Fig4Panel> emit_fig4_traces(const std::vector<CouplingParams>& triples,
                                        double t_max = kDefaultTraceTMax, int n_steps = kDefaultTraceSteps,
                                        double threshold = 1e-6);

}  // namespace fluxqed
