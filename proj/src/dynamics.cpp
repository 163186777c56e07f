#include "fluxqed/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "fluxqed/errors.hpp"

namespace fluxqed {
namespace {

void require_symmetric(const CouplingParams& p) {
    p.validate();
    if (!p.is_symmetric())
        throw ValidationError("the entanglement protocol assumes identical SQUIDs (g1 == g2, omega1 == omega2)");
}

}  // namespace

Evolution::Evolution(const CouplingParams& p)
    : params_((require_symmetric(p), p)),
      initial_(initial_state(p)),
      eig_(hermitian_eig(build_h_full(p))) {}

StateVector Evolution::state_at(double t) const { return apply(propagator(eig_, t), initial_); }

StateVector evolve(const CouplingParams& p, double t) {
    if (!std::isfinite(t) || t < 0.0) {
        std::ostringstream os;
        os << "evolution time must be finite and >= 0, got " << t;
        throw ValidationError(os.str());
    }
    return Evolution(p).state_at(t);
}

Amplitudes amplitudes(const StateVector& psi) {
    if (psi.dim() != 6)
        throw ValidationError("amplitudes() expects a state on the 6-dimensional phi basis");
    const auto& a = psi.amplitudes();
    const double r = std::sqrt(0.5);
    return {a(0), r * (a(1) + a(2)), r * (a(4) + a(5)), a(3)};
}

Probabilities probabilities(const Amplitudes& a) {
    return {std::norm(a.f1), std::norm(a.f2), std::norm(a.f3), std::norm(a.f4)};
}

double antisymmetric_population(const StateVector& psi) {
    if (psi.dim() != 6)
        throw ValidationError("antisymmetric_population() expects a state on the phi basis");
    const auto& a = psi.amplitudes();
    return 0.5 * (std::norm(a(1) - a(2)) + std::norm(a(4) - a(5)));
}

EvolutionTrace trace(const CouplingParams& p, double t_max, int n_steps) {
    if (!std::isfinite(t_max) || t_max <= 0.0)
        throw ValidationError("trace t_max must be finite and > 0");
    if (n_steps < 2) throw ValidationError("trace needs n_steps >= 2");

    const Evolution evolution(p);
    EvolutionTrace out{p, {}, {}};
    out.times.reserve(static_cast<std::size_t>(n_steps));
    out.rows.reserve(static_cast<std::size_t>(n_steps));
    for (int k = 0; k < n_steps; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(n_steps - 1);
        out.times.push_back(t);
        out.rows.push_back(probabilities(amplitudes(evolution.state_at(t))));
    }
    return out;
}

SectorEvolution::SectorEvolution(const CouplingParams& p) : params_(p) {
    const BlockHamiltonian blocks = block_decompose(p);
    const EigenSystem<double> eig = hermitian_eig(blocks.h4);

    // |d(0)> = N (sqrt2 g chi4+ - chi1+) in (chi1+, chi2+, chi3+, chi4+) coordinates.
    const StateVector d0 = initial_state(p);
    const Eigen::Matrix<double, 6, 6> t = symmetry_transform().transform;
    const Eigen::VectorXcd chi = t.cast<std::complex<double>>() * d0.amplitudes();
    const Eigen::Vector4cd start = chi.tail<4>();

    eigenvalues_ = eig.eigenvalues;
    const Eigen::Vector4cd overlaps = eig.eigenvectors.adjoint() * start;
    for (int k = 0; k < 4; ++k) weights_.col(k) = eig.eigenvectors.col(k) * overlaps(k);
}

Amplitudes SectorEvolution::amplitudes_at(double t) const {
    Eigen::Vector4cd phases;
    for (int k = 0; k < 4; ++k) {
        const double phi = eigenvalues_(k) * t;
        phases(k) = {std::cos(phi), -std::sin(phi)};
    }
    const Eigen::Vector4cd chi = weights_ * phases;
    return {chi(0), chi(1), chi(3), chi(2)};
}

}  // namespace fluxqed
