#include "fluxqed/basis.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace fluxqed {
namespace {

int level_excitation(Level level) { return level == Level::Ground ? 0 : 1; }

char level_char(Level level) {
    switch (level) {
        case Level::Ground: return '0';
        case Level::First: return '1';
        case Level::Upper: return 'a';
    }
    return '?';
}

}  // namespace

int excitation_number(const BasisLabel& label) {
    int n = level_excitation(label.squid1) + level_excitation(label.squid2) + label.photons;
    if (label.aux == AuxLevel::Excited) ++n;
    return n;
}

std::string to_string(const BasisLabel& label) {
    std::string out = "|";
    out += level_char(label.squid1);
    out += level_char(label.squid2);
    out += "," + std::to_string(label.photons) + "ph";
    if (label.aux) out += *label.aux == AuxLevel::Ground ? ",g" : ",e";
    out += ">";
    return out;
}

std::vector<BasisLabel> enumerate_basis(Subspace subspace) {
    using L = Level;
    if (subspace == Subspace::N0OneNoAux) {
        return {
            {L::Ground, L::Ground, 1, std::nullopt},
            {L::Upper, L::Ground, 0, std::nullopt},
            {L::Ground, L::Upper, 0, std::nullopt},
            {L::First, L::Ground, 0, std::nullopt},
            {L::Ground, L::First, 0, std::nullopt},
        };
    }
    const auto g = AuxLevel::Ground;
    return {
        {L::Ground, L::Ground, 1, g},
        {L::Upper, L::Ground, 0, g},
        {L::Ground, L::Upper, 0, g},
        {L::Ground, L::Ground, 0, AuxLevel::Excited},
        {L::First, L::Ground, 0, g},
        {L::Ground, L::First, 0, g},
    };
}

std::vector<BasisLabel> enumerate_labels_up_to(int max_excitations, bool with_aux) {
    constexpr std::array levels{Level::Ground, Level::First, Level::Upper};
    std::vector<BasisLabel> labels;
    for (Level s1 : levels) {
        for (Level s2 : levels) {
            for (int photons = 0; photons <= max_excitations; ++photons) {
                if (with_aux) {
                    for (AuxLevel aux : {AuxLevel::Ground, AuxLevel::Excited}) {
                        BasisLabel label{s1, s2, photons, aux};
                        if (excitation_number(label) <= max_excitations) labels.push_back(label);
                    }
                } else {
                    BasisLabel label{s1, s2, photons, std::nullopt};
                    if (excitation_number(label) <= max_excitations) labels.push_back(label);
                }
            }
        }
    }
    std::stable_sort(labels.begin(), labels.end(), [](const BasisLabel& a, const BasisLabel& b) {
        return excitation_number(a) < excitation_number(b);
    });
    return labels;
}

std::vector<BasisLabel> two_squid_basis() {
    using L = Level;
    return {
        {L::Upper, L::Ground, 0, std::nullopt},
        {L::Ground, L::Upper, 0, std::nullopt},
        {L::First, L::Ground, 0, std::nullopt},
        {L::Ground, L::First, 0, std::nullopt},
    };
}

}  // namespace fluxqed
