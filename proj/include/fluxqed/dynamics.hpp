#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fluxqed/linalg.hpp"
#include "fluxqed/model.hpp"
#include "fluxqed/state.hpp"

namespace fluxqed {

inline constexpr double kDefaultTraceTMax = 200.0;
inline constexpr int kDefaultTraceSteps = 4001;

/// Projections of |d(t)> onto the symmetric sector. f3 pairs with chi4+
/// (the |C>|0>_c|g>_A component) and f4 with chi3+ (auxiliary excited).
struct Amplitudes {
    std::complex<double> f1;  // chi1+ = |00>|1>_c|g>_A
    std::complex<double> f2;  // chi2+ = |D>|0>_c|g>_A
    std::complex<double> f3;  // chi4+ = |C>|0>_c|g>_A
    std::complex<double> f4;  // chi3+ = |00>|0>_c|e>_A
};

struct Probabilities {
    double p1 = 0, p2 = 0, p3 = 0, p4 = 0;

    double sum() const { return p1 + p2 + p3 + p4; }
    friend bool operator==(const Probabilities&, const Probabilities&) = default;
};

struct EvolutionTrace {
    CouplingParams params;
    std::vector<double> times;
    std::vector<Probabilities> rows;
};

/// Evolution of the initial dark state under the full 6x6 Hamiltonian. The
/// eigensystem is computed once; state_at() is then a matrix-vector product.
class Evolution {
public:
    explicit Evolution(const CouplingParams& p);

    const CouplingParams& params() const { return params_; }
    const StateVector& initial() const { return initial_; }
    const EigenSystem<double>& eigensystem() const { return eig_; }

    /// U(t)|d(0)>; any finite t.
    StateVector state_at(double t) const;

private:
    CouplingParams params_;
    StateVector initial_;
    EigenSystem<double> eig_;
};

/// U(t)|d(0)> for symmetric params and t >= 0.
StateVector evolve(const CouplingParams& p, double t);

/// Projections onto chi1+, chi2+, chi4+, chi3+ of a phi-basis state.
Amplitudes amplitudes(const StateVector& psi);

Probabilities probabilities(const Amplitudes& a);

/// |<chi1-|psi>|^2 + |<chi2-|psi>|^2.
double antisymmetric_population(const StateVector& psi);

/// Uniform grid t_k = k t_max / (n_steps - 1), k = 0 .. n_steps - 1.
EvolutionTrace trace(const CouplingParams& p, double t_max = kDefaultTraceTMax,
                     int n_steps = kDefaultTraceSteps);

/// Evolution restricted to the symmetric block H4, in spectral form:
/// F(t) = sum_k w_k e^{-i lambda_k t}. This is the cheap evaluator used by the
/// optimizer; one 4x4 eigendecomposition per parameter point.
class SectorEvolution {
public:
    explicit SectorEvolution(const CouplingParams& p);

    const CouplingParams& params() const { return params_; }
    Amplitudes amplitudes_at(double t) const;
    Probabilities probabilities_at(double t) const { return probabilities(amplitudes_at(t)); }
    /// Largest |lambda| of H4; sets the natural time scale.
    double max_frequency() const { return eigenvalues_.cwiseAbs().maxCoeff(); }

private:
    CouplingParams params_;
    Eigen::Vector4d eigenvalues_;
    // Column k: contribution of eigenmode k to (chi1+, chi2+, chi3+, chi4+).
    Eigen::Matrix4cd weights_;
};

}  // namespace fluxqed
