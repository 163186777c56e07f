#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fluxqed/basis.hpp"

namespace fluxqed {

inline constexpr double kNormTolerance = 1e-9;

// Normalized complex amplitude vector over an ordered, labelled basis.
class StateVector {
public:
    // Throws ValidationError on size mismatch, non-finite entries, or a norm
    // outside 1 +- kNormTolerance.
    StateVector(std::vector<BasisLabel> basis, Eigen::VectorXcd amplitudes);

    // Normalizes first; throws if the norm is zero.
    static StateVector normalized(std::vector<BasisLabel> basis, Eigen::VectorXcd amplitudes);

    const std::vector<BasisLabel>& basis() const { return basis_; }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    Eigen::Index dim() const { return amplitudes_.size(); }

    // Amplitude on `label`, zero if the label is not part of the basis.
    std::complex<double> amplitude(const BasisLabel& label) const;

private:
    std::vector<BasisLabel> basis_;
    Eigen::VectorXcd amplitudes_;
};

// Re-expresses `state` over `basis`. Every label carrying non-zero amplitude
// must appear in `basis`.
StateVector embed(const StateVector& state, std::span<const BasisLabel> basis);

// <lhs|rhs>; bases must be identical.
std::complex<double> inner_product(const StateVector& lhs, const StateVector& rhs);

}  // namespace fluxqed
