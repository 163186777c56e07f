#include "fluxqed/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fluxqed/errors.hpp"

namespace fluxqed {

StateVector::StateVector(std::vector<BasisLabel> basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<Eigen::Index>(basis_.size()) != amplitudes_.size()) {
        std::ostringstream os;
        os << "state has " << amplitudes_.size() << " amplitudes but " << basis_.size()
           << " basis labels";
        throw ValidationError(os.str());
    }
    if (!amplitudes_.allFinite()) throw ValidationError("state amplitudes must be finite");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "state is not normalized: norm = " << norm;
        throw ValidationError(os.str());
    }
}

StateVector StateVector::normalized(std::vector<BasisLabel> basis, Eigen::VectorXcd amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw ValidationError("cannot normalize a zero or non-finite state");
    return StateVector(std::move(basis), amplitudes / norm);
}

std::complex<double> StateVector::amplitude(const BasisLabel& label) const {
    const auto it = std::find(basis_.begin(), basis_.end(), label);
    if (it == basis_.end()) return {0.0, 0.0};
    return amplitudes_(it - basis_.begin());
}

StateVector embed(const StateVector& state, std::span<const BasisLabel> basis) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index k = 0; k < state.dim(); ++k) {
        const auto& label = state.basis()[static_cast<std::size_t>(k)];
        const auto it = std::find(basis.begin(), basis.end(), label);
        if (it == basis.end()) {
            if (state.amplitudes()(k) != std::complex<double>(0.0, 0.0))
                throw ValidationError("cannot embed state: label " + to_string(label) +
                                      " is missing from the target basis");
            continue;
        }
        out(it - basis.begin()) = state.amplitudes()(k);
    }
    return StateVector({basis.begin(), basis.end()}, std::move(out));
}

std::complex<double> inner_product(const StateVector& lhs, const StateVector& rhs) {
    if (lhs.basis() != rhs.basis())
        throw ValidationError("inner product requires identical bases (dimension mismatch)");
    return lhs.amplitudes().dot(rhs.amplitudes());
}

}  // namespace fluxqed
