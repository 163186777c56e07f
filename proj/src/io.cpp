#include "fluxqed/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace fluxqed {
namespace {

using nlohmann::json;

// JSON has no infinities; pi/g' at g' = 0 is stored as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void to_json(json& j, const CouplingParams& p) {
    j = json{{"g1", p.g1}, {"g2", p.g2}, {"omega1", p.omega1}, {"omega2", p.omega2}, {"g_prime", p.g_prime}};
}

void from_json(const json& j, CouplingParams& p) {
    j.at("g1").get_to(p.g1);
    j.at("g2").get_to(p.g2);
    j.at("omega1").get_to(p.omega1);
    j.at("omega2").get_to(p.omega2);
    j.at("g_prime").get_to(p.g_prime);
}

void to_json(json& j, const Probabilities& p) { j = json::array({p.p1, p.p2, p.p3, p.p4}); }

void from_json(const json& j, Probabilities& p) {
    p = {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(), j.at(3).get<double>()};
}

void to_json(json& j, const EvolutionTrace& t) {
    j = json{{"params", t.params}, {"times", t.times}, {"rows", t.rows}};
}

void from_json(const json& j, EvolutionTrace& t) {
    j.at("params").get_to(t.params);
    j.at("times").get_to(t.times);
    j.at("rows").get_to(t.rows);
}

void to_json(json& j, const OptimizeResult& r) {
    j = json{{"params", r.params},
             {"threshold", r.threshold},
             {"feasible", r.feasible},
             {"t0", r.t0},
             {"p1p2", r.p1p2},
             {"p3", r.p3},
             {"p4", r.p4},
             {"pi_over_gprime", number_or_null(r.pi_over_gprime)},
             {"pi_over_2gprime", number_or_null(r.pi_over_2gprime)}};
}

void from_json(const json& j, OptimizeResult& r) {
    j.at("params").get_to(r.params);
    j.at("threshold").get_to(r.threshold);
    j.at("feasible").get_to(r.feasible);
    j.at("t0").get_to(r.t0);
    j.at("p1p2").get_to(r.p1p2);
    j.at("p3").get_to(r.p3);
    j.at("p4").get_to(r.p4);
    r.pi_over_gprime = number_or_inf(j.at("pi_over_gprime"));
    r.pi_over_2gprime = number_or_inf(j.at("pi_over_2gprime"));
}

void to_json(json& j, const SweepGrid& g) {
    j = json{{"g_values", g.g_values},
             {"gprime_values", g.gprime_values},
             {"threshold_exponent", g.threshold_exponent},
             {"cells", g.cells}};
}

void from_json(const json& j, SweepGrid& g) {
    j.at("g_values").get_to(g.g_values);
    j.at("gprime_values").get_to(g.gprime_values);
    j.at("threshold_exponent").get_to(g.threshold_exponent);
    j.at("cells").get_to(g.cells);
}

void to_json(json& j, const Fig4Annotation& a) {
    j = json{{"result", a.result},
             {"abs_t0_minus_pi_over_gprime", number_or_null(a.distance_pi_over_gprime)},
             {"abs_t0_minus_pi_over_2gprime", number_or_null(a.distance_pi_over_2gprime)},
             {"nearest_peak_t", a.nearest_peak_t},
             {"nearest_peak_p3", a.nearest_peak_p3}};
}

void from_json(const json& j, Fig4Annotation& a) {
    j.at("result").get_to(a.result);
    a.distance_pi_over_gprime = number_or_inf(j.at("abs_t0_minus_pi_over_gprime"));
    a.distance_pi_over_2gprime = number_or_inf(j.at("abs_t0_minus_pi_over_2gprime"));
    j.at("nearest_peak_t").get_to(a.nearest_peak_t);
    j.at("nearest_peak_p3").get_to(a.nearest_peak_p3);
}

namespace csv {
namespace {

std::string num(double v) { return format_number(v); }

void write_result_fields(std::ostream& os, const OptimizeResult& r) {
    os << num(r.threshold) << ',' << (r.feasible ? 1 : 0) << ',' << num(r.t0) << ',' << num(r.p1p2) << ','
       << num(r.p3) << ',' << num(r.p4) << ',' << num(r.pi_over_gprime) << ',' << num(r.pi_over_2gprime)
       << ',' << num(std::abs(r.t0 - r.pi_over_gprime)) << ',' << num(std::abs(r.t0 - r.pi_over_2gprime));
}

}  // namespace

void write_trace(std::ostream& os, const EvolutionTrace& trace) {
    os << kTraceHeader << '\n';
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        const auto& r = trace.rows[k];
        os << num(trace.times[k]) << ',' << num(r.p1) << ',' << num(r.p2) << ',' << num(r.p3) << ','
           << num(r.p4) << ',' << num(r.sum()) << '\n';
    }
}

void write_optimize(std::ostream& os, const OptimizeResult& result, int exponent) {
    os << kOptimizeHeader << '\n';
    os << num(result.params.g1) << ',' << num(result.params.g_prime) << ',' << exponent << ',';
    write_result_fields(os, result);
    os << '\n';
}

void write_sweep(std::ostream& os, const std::vector<SweepGrid>& grids) {
    os << kSweepHeader << '\n';
    for (const auto& grid : grids) {
        for (const auto& cell : grid.cells) {
            os << num(cell.params.g1) << ',' << num(cell.params.g_prime) << ',' << grid.threshold_exponent << ','
               << (cell.feasible ? 1 : 0) << ',' << num(cell.t0) << ',' << num(cell.p3) << ','
               << num(cell.p1p2) << '\n';
        }
    }
}

void write_fig4_traces(std::ostream& os, const std::vector<Fig4Panel>& panels) {
    os << kFig4TraceHeader << '\n';
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const auto& trace = panels[i].trace;
        for (std::size_t k = 0; k < trace.times.size(); ++k) {
            const auto& r = trace.rows[k];
            os << i << ',' << num(trace.params.g1) << ',' << num(trace.params.g_prime) << ','
               << num(trace.times[k]) << ',' << num(r.p1) << ',' << num(r.p2) << ',' << num(r.p3) << ','
               << num(r.p4) << ',' << num(r.sum()) << '\n';
        }
    }
}

void write_fig4_annotations(std::ostream& os, const std::vector<Fig4Panel>& panels) {
    os << kFig4AnnotationHeader << '\n';
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const auto& a = panels[i].annotation;
        os << i << ',' << num(a.result.params.g1) << ',' << num(a.result.params.g_prime) << ',';
        write_result_fields(os, a.result);
        os << ',' << num(a.nearest_peak_t) << ',' << num(a.nearest_peak_p3) << '\n';
    }
}

}  // namespace csv
}  // namespace fluxqed
