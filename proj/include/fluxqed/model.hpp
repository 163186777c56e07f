#pragma once

// Hamiltonians of two Lambda-type SQUIDs and an auxiliary two-level SQUID
// sharing one cavity mode, in the interaction picture and in units of the
// classical drive strength Omega.

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fluxqed/basis.hpp"
#include "fluxqed/linalg.hpp"
#include "fluxqed/state.hpp"

namespace fluxqed {

/// Dimensionless couplings in units of Omega; times are in units of 1/Omega.
struct CouplingParams {
    double g1 = 0;       // cavity - SQUID I
    double g2 = 0;       // cavity - SQUID II
    double omega1 = 1;   // classical drive - SQUID I
    double omega2 = 1;   // classical drive - SQUID II
    double g_prime = 0;  // cavity - auxiliary SQUID

    /// Identical SQUIDs with Omega_1 = Omega_2 = 1.
    static CouplingParams symmetric(double g, double g_prime);

    bool is_symmetric() const { return g1 == g2 && omega1 == omega2; }

    /// Throws ValidationError unless every field is finite and >= 0.
    void validate() const;

    friend bool operator==(const CouplingParams&, const CouplingParams&) = default;
};

/// One term c * |label> of an operator acting on a product state.
struct LabelTerm {
    double coefficient;
    BasisLabel label;
};

/// H|label> for H = H0 (+ H_A when the label carries the auxiliary SQUID).
/// Photon ladder factors sqrt(n) are included, so the action is valid for any
/// photon number.
std::vector<LabelTerm> apply_hamiltonian(const CouplingParams& p, const BasisLabel& label);

/// <bra|H|ket>.
double matrix_element(const CouplingParams& p, const BasisLabel& bra, const BasisLabel& ket);

/// Matrix of H restricted to an arbitrary label list.
Eigen::MatrixXd hamiltonian_matrix(const CouplingParams& p, const std::vector<BasisLabel>& basis);

/// H0 on |psi_1> ... |psi_5>.
HermitianMatrix<double> build_h0(const CouplingParams& p);

/// H0 + H_A on |phi_1> ... |phi_6>.
HermitianMatrix<double> build_h_full(const CouplingParams& p);

/// Exchange-symmetry adapted basis. Rows of `transform` are, in order,
/// chi1-, chi2-, chi1+, chi2+, chi3+, chi4+ expressed in phi coordinates.
struct SymmetryBasis {
    Eigen::Matrix<double, 6, 6> transform;
    std::array<char, 6> parity;  // '-' or '+'
};

SymmetryBasis symmetry_transform();

/// Antisymmetric (chi1-, chi2-) and symmetric (chi1+ ... chi4+) blocks.
struct BlockHamiltonian {
    HermitianMatrix<double> h2;
    HermitianMatrix<double> h4;
};

/// T H Tt split into H2 (+) H4. Requires exchange symmetry.
BlockHamiltonian block_decompose(const CouplingParams& p);

/// Largest |entry| of T H Tt coupling the + and - sectors.
double cross_sector_coupling(const CouplingParams& p);

/// Closed-form spectrum {-1, +1, +-E1+, +-E3+} with eta = 1 + 2g^2 + g'^2,
/// sorted ascending. Requires exchange symmetry.
std::array<double, 6> analytic_eigenvalues(const CouplingParams& p);

/// Unnormalized dark-state weights on (|10>|0>_c, |01>|0>_c, |00>|1>_c):
/// (Omega2 g1, Omega1 g2, -Omega1 Omega2).
std::array<double, 3> dark_weights(const CouplingParams& p);

/// Zero-energy eigenstate of H0 on the psi basis.
StateVector dark_state(const CouplingParams& p);

/// The dark state with the auxiliary SQUID in |g>, on the phi basis.
StateVector initial_state(const CouplingParams& p);

struct TargetStates {
    StateVector c;  // (|10> + |01>)/sqrt2
    StateVector d;  // (|a0> + |0a>)/sqrt2
    std::vector<BasisLabel> basis;
};

/// |C> and |D> on two_squid_basis().
TargetStates target_states();

/// M [Omega2 g1 |10> + Omega1 g2 |01>] on two_squid_basis().
StateVector entangled_state_general(const CouplingParams& p);

}  // namespace fluxqed
