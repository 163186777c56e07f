#include "fluxqed/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fluxqed/errors.hpp"

namespace fluxqed {
namespace {

constexpr double kCrossSectorTolerance = 1e-14;

void require_symmetric(const CouplingParams& p, const char* what) {
    p.validate();
    if (!p.is_symmetric()) {
        throw ValidationError(std::string(what) +
                              " requires exchange symmetry (g1 == g2 and omega1 == omega2)");
    }
}

// Lambda-system couplings of one SQUID: cavity on |0> <-> |a>, drive on |1> <-> |a>.
void squid_terms(Level level, double g, double omega, const BasisLabel& label, Level BasisLabel::*slot,
                 std::vector<LabelTerm>& out) {
    const int n = label.photons;
    switch (level) {
        case Level::Ground:
            if (n >= 1 && g != 0.0) {
                BasisLabel next = label;
                next.*slot = Level::Upper;
                next.photons = n - 1;
                out.push_back({g * std::sqrt(static_cast<double>(n)), next});
            }
            break;
        case Level::First:
            if (omega != 0.0) {
                BasisLabel next = label;
                next.*slot = Level::Upper;
                out.push_back({omega, next});
            }
            break;
        case Level::Upper:
            if (g != 0.0) {
                BasisLabel next = label;
                next.*slot = Level::Ground;
                next.photons = n + 1;
                out.push_back({g * std::sqrt(static_cast<double>(n + 1)), next});
            }
            if (omega != 0.0) {
                BasisLabel next = label;
                next.*slot = Level::First;
                out.push_back({omega, next});
            }
            break;
    }
}

}  // namespace

CouplingParams CouplingParams::symmetric(double g, double g_prime) {
    return CouplingParams{g, g, 1.0, 1.0, g_prime};
}

void CouplingParams::validate() const {
    const std::pair<const char*, double> fields[] = {
        {"g1", g1}, {"g2", g2}, {"omega1", omega1}, {"omega2", omega2}, {"g_prime", g_prime}};
    for (const auto& [name, value] : fields) {
        if (!std::isfinite(value) || value < 0.0) {
            std::ostringstream os;
            os << "coupling " << name << " must be finite and >= 0, got " << value;
            throw ValidationError(os.str());
        }
    }
}

std::vector<LabelTerm> apply_hamiltonian(const CouplingParams& p, const BasisLabel& label) {
    std::vector<LabelTerm> out;
    squid_terms(label.squid1, p.g1, p.omega1, label, &BasisLabel::squid1, out);
    squid_terms(label.squid2, p.g2, p.omega2, label, &BasisLabel::squid2, out);
    if (label.aux && p.g_prime != 0.0) {
        const int n = label.photons;
        if (*label.aux == AuxLevel::Ground && n >= 1) {
            BasisLabel next = label;
            next.aux = AuxLevel::Excited;
            next.photons = n - 1;
            out.push_back({p.g_prime * std::sqrt(static_cast<double>(n)), next});
        } else if (*label.aux == AuxLevel::Excited) {
            BasisLabel next = label;
            next.aux = AuxLevel::Ground;
            next.photons = n + 1;
            out.push_back({p.g_prime * std::sqrt(static_cast<double>(n + 1)), next});
        }
    }
    return out;
}

double matrix_element(const CouplingParams& p, const BasisLabel& bra, const BasisLabel& ket) {
    double sum = 0.0;
    for (const auto& term : apply_hamiltonian(p, ket))
        if (term.label == bra) sum += term.coefficient;
    return sum;
}

Eigen::MatrixXd hamiltonian_matrix(const CouplingParams& p, const std::vector<BasisLabel>& basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (const auto& term : apply_hamiltonian(p, basis[static_cast<std::size_t>(k)])) {
            const auto it = std::find(basis.begin(), basis.end(), term.label);
            if (it != basis.end()) h(it - basis.begin(), k) += term.coefficient;
        }
    }
    return h;
}

HermitianMatrix<double> build_h0(const CouplingParams& p) {
    p.validate();
    return HermitianMatrix<double>::from_real(hamiltonian_matrix(p, enumerate_basis(Subspace::N0OneNoAux)));
}

HermitianMatrix<double> build_h_full(const CouplingParams& p) {
    p.validate();
    return HermitianMatrix<double>::from_real(hamiltonian_matrix(p, enumerate_basis(Subspace::NOneWithAux)));
}

SymmetryBasis symmetry_transform() {
    const double r = std::sqrt(0.5);
    SymmetryBasis basis;
    basis.transform <<
        0, r, -r, 0, 0, 0,   // chi1- = (phi2 - phi3)/sqrt2
        0, 0, 0, 0, r, -r,   // chi2- = (phi5 - phi6)/sqrt2
        1, 0, 0, 0, 0, 0,    // chi1+ = phi1
        0, r, r, 0, 0, 0,    // chi2+ = (phi2 + phi3)/sqrt2
        0, 0, 0, 1, 0, 0,    // chi3+ = phi4
        0, 0, 0, 0, r, r;    // chi4+ = (phi5 + phi6)/sqrt2
    basis.parity = {'-', '-', '+', '+', '+', '+'};
    return basis;
}

namespace {

Eigen::Matrix<double, 6, 6> conjugated(const CouplingParams& p) {
    const Eigen::Matrix<double, 6, 6> t = symmetry_transform().transform;
    const Eigen::Matrix<double, 6, 6> h = build_h_full(p).matrix().real();
    return t * h * t.transpose();
}

}  // namespace

double cross_sector_coupling(const CouplingParams& p) {
    return conjugated(p).block<2, 4>(0, 2).cwiseAbs().maxCoeff();
}

BlockHamiltonian block_decompose(const CouplingParams& p) {
    require_symmetric(p, "block decomposition");
    const Eigen::Matrix<double, 6, 6> hc = conjugated(p);
    const double cross = std::max(hc.block<2, 4>(0, 2).cwiseAbs().maxCoeff(),
                                  hc.block<4, 2>(2, 0).cwiseAbs().maxCoeff());
    if (cross > kCrossSectorTolerance) {
        std::ostringstream os;
        os << "symmetry transform left a cross-sector coupling of " << cross;
        throw ConsistencyError(os.str());
    }
    Eigen::Matrix2d h2 = hc.block<2, 2>(0, 0);
    Eigen::Matrix4d h4 = hc.block<4, 4>(2, 2);
    // Symmetrize away rounding from the two-sided product.
    h2 = 0.5 * (h2 + h2.transpose()).eval();
    h4 = 0.5 * (h4 + h4.transpose()).eval();
    return {HermitianMatrix<double>::from_real(h2), HermitianMatrix<double>::from_real(h4)};
}

std::array<double, 6> analytic_eigenvalues(const CouplingParams& p) {
    require_symmetric(p, "analytic eigenvalues");
    // Omega units: rescale by the drive.
    const double g = p.g1 / p.omega1;
    const double gp = p.g_prime / p.omega1;
    const double eta = 1.0 + 2.0 * g * g + gp * gp;
    const double radicand = eta * eta - 4.0 * gp * gp;
    if (radicand < -1e-12) {
        std::ostringstream os;
        os << "negative radicand eta^2 - 4 g'^2 = " << radicand;
        throw ConsistencyError(os.str());
    }
    const double root = std::sqrt(std::max(radicand, 0.0));
    const double e1 = std::sqrt(0.5 * (eta + root));
    // E1^2 E3^2 = g'^2; avoids cancellation in (eta - root) for small g'.
    const double e3 = gp / e1;
    std::array<double, 6> values{-1.0, 1.0, e1, -e1, e3, -e3};
    for (double& v : values) v *= p.omega1;
    std::sort(values.begin(), values.end());
    return values;
}

std::array<double, 3> dark_weights(const CouplingParams& p) {
    return {p.omega2 * p.g1, p.omega1 * p.g2, -p.omega1 * p.omega2};
}

StateVector dark_state(const CouplingParams& p) {
    p.validate();
    const auto w = dark_weights(p);
    if (w[0] == 0.0 && w[1] == 0.0 && w[2] == 0.0)
        throw ValidationError("dark state undefined: all weights Omega2 g1, Omega1 g2, Omega1 Omega2 vanish");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(5);
    amps(0) = w[2];
    amps(3) = w[0];
    amps(4) = w[1];
    return StateVector::normalized(enumerate_basis(Subspace::N0OneNoAux), amps);
}

StateVector initial_state(const CouplingParams& p) {
    const StateVector dark = dark_state(p);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(6);
    amps(0) = dark.amplitudes()(0);
    amps(4) = dark.amplitudes()(3);
    amps(5) = dark.amplitudes()(4);
    return StateVector(enumerate_basis(Subspace::NOneWithAux), amps);
}

TargetStates target_states() {
    const double r = std::sqrt(0.5);
    auto basis = two_squid_basis();
    Eigen::VectorXcd c(4), d(4);
    c << 0, 0, r, r;
    d << r, r, 0, 0;
    return {StateVector(basis, c), StateVector(basis, d), basis};
}

StateVector entangled_state_general(const CouplingParams& p) {
    p.validate();
    const double a = p.omega2 * p.g1;
    const double b = p.omega1 * p.g2;
    if (a == 0.0 && b == 0.0)
        throw ValidationError("entangled state undefined: Omega2 g1 and Omega1 g2 both vanish");
    Eigen::VectorXcd amps(4);
    amps << 0, 0, a, b;
    return StateVector::normalized(two_squid_basis(), amps);
}

}  // namespace fluxqed
