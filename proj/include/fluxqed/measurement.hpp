#pragma once

#include "fluxqed/basis.hpp"
#include "fluxqed/state.hpp"

namespace fluxqed {

inline constexpr double kUnreachableProbability = 1e-14;

/// Result of an ideal projective measurement of the auxiliary SQUID.
struct MeasurementOutcome {
    AuxLevel aux_result;
    double probability;
    /// Renormalized state of the two SQUIDs and the cavity (auxiliary label removed).
    StateVector collapsed;
};

/// Born probability of finding the auxiliary SQUID in `outcome`.
double outcome_probability(const StateVector& psi, AuxLevel outcome);

/// Projects onto aux == outcome and renormalizes. Throws
/// UnreachableOutcomeError when the outcome probability is below 1e-14.
MeasurementOutcome postselect(const StateVector& psi, AuxLevel outcome);

/// |psi> (x) |aux>_A.
StateVector attach_aux(const StateVector& psi, AuxLevel aux);

/// |<target|psi>|^2 on identical bases.
double fidelity(const StateVector& psi, const StateVector& target);

/// |C> (x) |0>_c on the basis of `collapsed`.
StateVector target_on(const StateVector& collapsed);

}  // namespace fluxqed
