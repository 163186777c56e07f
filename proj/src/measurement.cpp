#include "fluxqed/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fluxqed/errors.hpp"
#include "fluxqed/model.hpp"

namespace fluxqed {

double outcome_probability(const StateVector& psi, AuxLevel outcome) {
    double p = 0.0;
    for (Eigen::Index k = 0; k < psi.dim(); ++k) {
        const auto& label = psi.basis()[static_cast<std::size_t>(k)];
        if (!label.aux) throw ValidationError("state has no auxiliary SQUID label: " + to_string(label));
        if (*label.aux == outcome) p += std::norm(psi.amplitudes()(k));
    }
    return p;
}

MeasurementOutcome postselect(const StateVector& psi, AuxLevel outcome) {
    const double p = outcome_probability(psi, outcome);
    if (p < kUnreachableProbability) {
        std::ostringstream os;
        os << "outcome unreachable: probability " << p << " for aux = "
           << (outcome == AuxLevel::Ground ? "g" : "e");
        throw UnreachableOutcomeError(os.str());
    }
    std::vector<BasisLabel> basis;
    std::vector<std::complex<double>> amps;
    for (Eigen::Index k = 0; k < psi.dim(); ++k) {
        BasisLabel label = psi.basis()[static_cast<std::size_t>(k)];
        if (*label.aux != outcome) continue;
        label.aux.reset();
        basis.push_back(label);
        amps.push_back(psi.amplitudes()(k));
    }
    const Eigen::VectorXcd v =
        Eigen::Map<const Eigen::VectorXcd>(amps.data(), static_cast<Eigen::Index>(amps.size())) /
        std::sqrt(p);
    return {outcome, std::min(p, 1.0), StateVector::normalized(std::move(basis), v)};
}

StateVector attach_aux(const StateVector& psi, AuxLevel aux) {
    std::vector<BasisLabel> basis = psi.basis();
    for (auto& label : basis) {
        if (label.aux) throw ValidationError("state already carries an auxiliary label");
        label.aux = aux;
    }
    return StateVector(std::move(basis), psi.amplitudes());
}

double fidelity(const StateVector& psi, const StateVector& target) {
    if (psi.basis() != target.basis()) {
        std::ostringstream os;
        os << "fidelity requires matching bases (dimension mismatch: " << psi.dim() << " vs "
           << target.dim() << ")";
        throw ValidationError(os.str());
    }
    return std::clamp(std::norm(target.amplitudes().dot(psi.amplitudes())), 0.0, 1.0);
}

StateVector target_on(const StateVector& collapsed) {
    return embed(target_states().c, collapsed.basis());
}

}  // namespace fluxqed
