#include "fluxqed/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "fluxqed/errors.hpp"

namespace fluxqed {
namespace {

constexpr double kBaseStep = 0.01;
constexpr double kBoundaryTolerance = 1e-13;
constexpr double kGoldenTolerance = 1e-11;

// Golden-section search for the minimum of a unimodal f on [lo, hi].
template <typename F>
double golden_minimize(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > kGoldenTolerance) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

void validate_search(const CouplingParams& p, double t_max, const ScanOptions& options) {
    p.validate();
    if (!std::isfinite(t_max) || t_max <= 0.0) throw ValidationError("t_max must be finite and > 0");
    if (!std::isfinite(options.step_scale) || options.step_scale <= 0.0)
        throw ValidationError("scan step scale must be finite and > 0");
}

}  // namespace

FeasibilityScan::FeasibilityScan(const CouplingParams& p, double t_max, ScanOptions options)
    : evolution_((validate_search(p, t_max, options), p)), t_max_(t_max) {
    const double h_max = kBaseStep / std::max({1.0, p.g1, p.g_prime}) * options.step_scale;
    const auto n = static_cast<std::size_t>(std::ceil(t_max / h_max));
    step_ = t_max / static_cast<double>(n);

    times_.resize(n + 1);
    residual_.resize(n + 1);
    p3_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = step_ * static_cast<double>(i);
        const Probabilities pr = evolution_.probabilities_at(t);
        times_[i] = t;
        residual_[i] = pr.p1 + pr.p2;
        p3_[i] = pr.p3;
    }

    auto refine = [&](std::size_t i, double lo, double hi) {
        const double t = golden_minimize([&](double x) { return residual_at(x); }, lo, hi);
        const double r = residual_at(t);
        // Keep the grid point if refinement did not improve on it.
        if (r <= residual_[i]) dips_.push_back({i, t, r});
        else dips_.push_back({i, times_[i], residual_[i]});
    };
    for (std::size_t i = 1; i < n; ++i) {
        if (residual_[i] <= residual_[i - 1] && residual_[i] < residual_[i + 1])
            refine(i, times_[i - 1], times_[i + 1]);
    }
    if (n >= 1 && residual_[n] < residual_[n - 1]) refine(n, times_[n - 1], times_[n]);
}

double FeasibilityScan::residual_at(double t) const {
    const Probabilities pr = evolution_.probabilities_at(t);
    return pr.p1 + pr.p2;
}

double FeasibilityScan::p3_at(double t) const { return evolution_.probabilities_at(t).p3; }

double FeasibilityScan::boundary(double feasible, double infeasible, double threshold) const {
    for (int it = 0; it < 200 && std::abs(infeasible - feasible) > kBoundaryTolerance; ++it) {
        const double mid = 0.5 * (feasible + infeasible);
        if (residual_at(mid) <= threshold) feasible = mid;
        else infeasible = mid;
    }
    return feasible;
}

double FeasibilityScan::argmax_p3(double lo, double hi) const {
    if (hi <= lo) return lo;
    return golden_minimize([&](double x) { return -p3_at(x); }, lo, hi);
}

OptimizeResult FeasibilityScan::make_result(double t, double threshold, bool feasible) const {
    const Probabilities pr = evolution_.probabilities_at(t);
    const double gp = evolution_.params().g_prime;
    const double inf = std::numeric_limits<double>::infinity();
    OptimizeResult out;
    out.params = evolution_.params();
    out.threshold = threshold;
    out.feasible = feasible;
    out.t0 = t;
    out.p1p2 = pr.p1 + pr.p2;
    out.p3 = pr.p3;
    out.p4 = pr.p4;
    out.pi_over_gprime = gp > 0.0 ? std::numbers::pi / gp : inf;
    out.pi_over_2gprime = gp > 0.0 ? std::numbers::pi / (2.0 * gp) : inf;
    return out;
}

OptimizeResult FeasibilityScan::best(double threshold) const {
    if (!std::isfinite(threshold) || threshold <= 0.0 || threshold >= 1.0)
        throw ValidationError("threshold must lie in (0, 1)");

    struct Candidate {
        double t;
        double p3;
    };
    std::vector<Candidate> candidates;
    auto consider = [&](double t) {
        if (t <= 0.0 || t > t_max_) return;
        const Probabilities pr = evolution_.probabilities_at(t);
        if (pr.p1 + pr.p2 <= threshold) candidates.push_back({t, pr.p3});
    };

    const std::size_t n = times_.size() - 1;

    // Runs of feasible grid points.
    for (std::size_t i = 1; i <= n;) {
        if (residual_[i] > threshold) {
            ++i;
            continue;
        }
        const std::size_t a = i;
        while (i + 1 <= n && residual_[i + 1] <= threshold) ++i;
        const std::size_t b = i;
        ++i;

        // t = 0 itself is excluded; a run touching it starts at the first grid point.
        const double left = residual_[a - 1] <= threshold ? times_[a] : boundary(times_[a], times_[a - 1], threshold);
        const double right = b < n ? boundary(times_[b], times_[b + 1], threshold) : times_[n];
        consider(left);
        consider(right);
        for (std::size_t k = a; k <= b; ++k) {
            const bool up_left = p3_[k] >= p3_[k - 1];
            const bool up_right = k == n || p3_[k] >= p3_[k + 1];
            if (!(up_left && up_right)) continue;
            consider(times_[k]);
            const double lo = std::max(left, times_[k - 1]);
            const double hi = std::min(right, k == n ? times_[n] : times_[k + 1]);
            consider(argmax_p3(lo, hi));
        }
    }

    // Sub-grid feasible pockets around refined minima of the residual.
    for (const Dip& dip : dips_) {
        if (residual_[dip.index] <= threshold || dip.residual > threshold) continue;
        const double lo = times_[dip.index - 1];
        const double hi = dip.index == n ? times_[n] : times_[dip.index + 1];
        const double left = boundary(dip.t, lo, threshold);
        const double right = residual_at(hi) <= threshold ? hi : boundary(dip.t, hi, threshold);
        consider(left);
        consider(right);
        consider(dip.t);
        consider(argmax_p3(left, right));
    }

    if (candidates.empty()) {
        // Report the smallest residual seen.
        double best_t = times_[std::min<std::size_t>(1, n)];
        double best_r = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k <= n; ++k) {
            if (residual_[k] < best_r) {
                best_r = residual_[k];
                best_t = times_[k];
            }
        }
        for (const Dip& dip : dips_) {
            if (dip.residual < best_r) {
                best_r = dip.residual;
                best_t = dip.t;
            }
        }
        return make_result(best_t, threshold, false);
    }

    double p3_max = -1.0;
    for (const auto& c : candidates) p3_max = std::max(p3_max, c.p3);
    double t_best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates)
        if (c.p3 >= p3_max - kTieTolerance) t_best = std::min(t_best, c.t);
    return make_result(t_best, threshold, true);
}

OptimizeResult find_t0(const CouplingParams& p, double threshold, double t_max, ScanOptions options) {
    if (!std::isfinite(threshold) || threshold <= 0.0 || threshold >= 1.0)
        throw ValidationError("threshold must lie in (0, 1)");
    return FeasibilityScan(p, t_max, options).best(threshold);
}

std::vector<double> linspace(double min, double max, int n) {
    if (n < 1) throw ValidationError("grid axis needs at least one point");
    if (!std::isfinite(min) || !std::isfinite(max) || min <= 0.0 || max < min)
        throw ValidationError("grid axis range must satisfy 0 < min <= max");
    if (n == 1) {
        if (min != max) throw ValidationError("a single-point grid axis needs min == max");
        return {min};
    }
    if (max == min) throw ValidationError("grid axis with several points needs min < max");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = min + (max - min) * k / (n - 1);
    out.back() = max;
    return out;
}

std::size_t SweepGrid::feasible_count() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const OptimizeResult& r) { return r.feasible; }));
}

std::vector<SweepGrid> sweep(const std::vector<double>& g_values, const std::vector<double>& gprime_values,
                             const std::vector<int>& threshold_exponents, const SweepOptions& options) {
    auto check_axis = [](const std::vector<double>& axis, const char* name) {
        if (axis.empty()) throw ValidationError(std::string(name) + " axis is empty");
        for (std::size_t k = 0; k < axis.size(); ++k) {
            if (!std::isfinite(axis[k]) || axis[k] <= 0.0)
                throw ValidationError(std::string(name) + " values must be finite and > 0");
            if (k > 0 && axis[k] <= axis[k - 1])
                throw ValidationError(std::string(name) + " values must be strictly ascending");
        }
    };
    check_axis(g_values, "g");
    check_axis(gprime_values, "g'");
    if (threshold_exponents.empty()) throw ValidationError("no threshold exponents given");
    for (int j : threshold_exponents)
        if (j < 1 || j > 15) throw ValidationError("threshold exponents must lie in 1..15");

    const std::size_t ng = g_values.size();
    const std::size_t ngp = gprime_values.size();
    const std::size_t total = ng * ngp;

    std::vector<SweepGrid> grids;
    for (int j : threshold_exponents)
        grids.push_back({g_values, gprime_values, j, std::vector<OptimizeResult>(total)});

    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::mutex progress_mutex;
    auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const CouplingParams p = CouplingParams::symmetric(g_values[idx / ngp], gprime_values[idx % ngp]);
            const FeasibilityScan scan(p, options.t_max, options.scan);
            for (std::size_t k = 0; k < grids.size(); ++k)
                grids[k].cells[idx] = scan.best(std::pow(10.0, -grids[k].threshold_exponent));
            if (options.progress) {
                std::lock_guard lock(progress_mutex);
                options.progress(++done, total);
            }
        }
    };

    unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return grids;
}

std::array<CouplingParams, 3> reference_pairs() {
    return {CouplingParams::symmetric(0.25, 1.89), CouplingParams::symmetric(2.95, 1.10),
            CouplingParams::symmetric(0.60, 1.37)};
}

std::vector<Fig4Panel> emit_fig4_traces(const std::vector<CouplingParams>& triples, double t_max, int n_steps,
                                        double threshold) {
    std::vector<Fig4Panel> panels;
    for (const auto& p : triples) {
        Fig4Panel panel{trace(p, t_max, n_steps), {}};
        Fig4Annotation& note = panel.annotation;
        note.result = find_t0(p, threshold, t_max);
        note.distance_pi_over_gprime = std::abs(note.result.t0 - note.result.pi_over_gprime);
        note.distance_pi_over_2gprime = std::abs(note.result.t0 - note.result.pi_over_2gprime);

        const auto& rows = panel.trace.rows;
        const auto& times = panel.trace.times;
        double best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const bool left_ok = k == 0 || rows[k].p3 >= rows[k - 1].p3;
            const bool right_ok = k + 1 == rows.size() || rows[k].p3 >= rows[k + 1].p3;
            if (!(left_ok && right_ok)) continue;
            const double distance = std::abs(times[k] - note.result.t0);
            if (distance < best_distance) {
                best_distance = distance;
                note.nearest_peak_t = times[k];
                note.nearest_peak_p3 = rows[k].p3;
            }
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

}  // namespace fluxqed
