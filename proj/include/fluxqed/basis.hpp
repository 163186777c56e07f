#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace fluxqed {

// Levels of a Lambda-type SQUID: ground |0>, first excited |1>, upper |a>.
enum class Level { Ground, First, Upper };

// Levels of the two-level auxiliary SQUID.
enum class AuxLevel { Ground, Excited };

// Product state |squid1>|squid2>|photons>_c (|aux>_A).
struct BasisLabel {
    Level squid1 = Level::Ground;
    Level squid2 = Level::Ground;
    int photons = 0;
    std::optional<AuxLevel> aux;

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// Total excitation number: SQUID levels in {1, a}, photons, and an excited auxiliary.
int excitation_number(const BasisLabel& label);

std::string to_string(const BasisLabel& label);

enum class Subspace {
    N0OneNoAux,   // |psi_1> ... |psi_5>
    NOneWithAux,  // |phi_1> ... |phi_6>
};

std::vector<BasisLabel> enumerate_basis(Subspace subspace);

// Every label with excitation number in [0, max_excitations], photons included,
// optionally carrying the auxiliary SQUID. Ordered by excitation number, then
// lexicographically.
std::vector<BasisLabel> enumerate_labels_up_to(int max_excitations, bool with_aux);

// Two-SQUID labels (cavity vacuum, no auxiliary) spanning |C> and |D>:
// |a0>, |0a>, |10>, |01>.
std::vector<BasisLabel> two_squid_basis();

}  // namespace fluxqed
