#pragma once

// Dense complex linear algebra for the small (dim <= 8) Hermitian operators of
// the model: a cyclic Jacobi eigensolver, the spectral propagator e^{-iHt} and
// an independent Taylor/scaling-and-squaring propagator used as an oracle.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "fluxqed/errors.hpp"
#include "fluxqed/state.hpp"

namespace fluxqed {

inline constexpr Eigen::Index kMaxDim = 8;
inline constexpr double kHermiticityTolerance = 1e-14;

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Square complex matrix with entries[j][k] == conj(entries[k][j]) within
/// kHermiticityTolerance and a real diagonal. Validated on construction.
template <typename Scalar>
class HermitianMatrix {
public:
    explicit HermitianMatrix(CMatrix<Scalar> entries) : entries_(std::move(entries)) {
        validate();
    }

    template <typename Derived>
    static HermitianMatrix from_real(const Eigen::MatrixBase<Derived>& entries) {
        return HermitianMatrix(entries.template cast<std::complex<Scalar>>());
    }

    const CMatrix<Scalar>& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }
    std::complex<Scalar> operator()(Eigen::Index j, Eigen::Index k) const { return entries_(j, k); }

private:
    void validate() const {
        if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
            std::ostringstream os;
            os << "Hermitian matrix must be square and non-empty, got " << entries_.rows() << "x"
               << entries_.cols();
            throw ValidationError(os.str());
        }
        for (Eigen::Index j = 0; j < entries_.rows(); ++j) {
            for (Eigen::Index k = 0; k < entries_.cols(); ++k) {
                const auto v = entries_(j, k);
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                    std::ostringstream os;
                    os << "non-finite entry at (" << j << ", " << k << ")";
                    throw ValidationError(os.str());
                }
                if (std::abs(v - std::conj(entries_(k, j))) > kHermiticityTolerance) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "matrix is not Hermitian: entry (" << j << ", " << k << ") = " << v
                       << " but conj of (" << k << ", " << j << ") = " << std::conj(entries_(k, j));
                    throw ValidationError(os.str());
                }
            }
            if (std::abs(entries_(j, j).imag()) > kHermiticityTolerance) {
                std::ostringstream os;
                os << "diagonal entry (" << j << ", " << j << ") has imaginary part "
                   << entries_(j, j).imag();
                throw ValidationError(os.str());
            }
        }
    }

    CMatrix<Scalar> entries_;
};

/// Eigenvalues ascending; eigenvectors stored as matching orthonormal columns.
template <typename Scalar>
struct EigenSystem {
    RVector<Scalar> eigenvalues;
    CMatrix<Scalar> eigenvectors;

    Eigen::Index dim() const { return eigenvalues.size(); }
};

/// Propagator e^{-iHt}. Not re-validated on construction; see unitarity_defect().
template <typename Scalar>
struct UnitaryMatrix {
    CMatrix<Scalar> entries;

    Eigen::Index dim() const { return entries.rows(); }
};

/// Max elementwise |U^dagger U - I|.
template <typename Scalar>
Scalar unitarity_defect(const UnitaryMatrix<Scalar>& u) {
    const CMatrix<Scalar> gram = u.entries.adjoint() * u.entries;
    return (gram - CMatrix<Scalar>::Identity(u.dim(), u.dim())).cwiseAbs().maxCoeff();
}

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const CMatrix<Scalar>& a) {
    Scalar sum = 0;
    for (Eigen::Index j = 0; j < a.rows(); ++j)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            if (j != k) sum += std::norm(a(j, k));
    return std::sqrt(sum);
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a complex Hermitian matrix (dim <= kMaxDim).
///
/// Each rotation first removes the phase of the pivot a_pq, then applies a real
/// Givens rotation that annihilates it. Sweeps continue until the off-diagonal
/// Frobenius norm drops below machine precision relative to ||H||_F. Ties in the
/// final ascending sort keep the Jacobi output order.
template <typename Scalar>
EigenSystem<Scalar> hermitian_eig(const HermitianMatrix<Scalar>& h) {
    using Complex = std::complex<Scalar>;
    const Eigen::Index n = h.dim();
    if (n > kMaxDim) {
        std::ostringstream os;
        os << "hermitian_eig supports dim <= " << kMaxDim << ", got " << n;
        throw ValidationError(os.str());
    }

    CMatrix<Scalar> a = h.matrix();
    CMatrix<Scalar> v = CMatrix<Scalar>::Identity(n, n);
    for (Eigen::Index j = 0; j < n; ++j) a(j, j) = Complex(a(j, j).real(), 0);

    const Scalar scale = a.norm();
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    constexpr int kMaxSweeps = 100;

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) <= eps * scale) break;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const Scalar mag = std::abs(apq);
                if (mag == Scalar(0)) continue;
                const Complex phase = apq / mag;
                const Scalar app = a(p, p).real();
                const Scalar aqq = a(q, q).real();
                const Scalar theta = Scalar(0.5) * std::atan2(Scalar(2) * mag, aqq - app);
                const Scalar c = std::cos(theta);
                const Scalar s = std::sin(theta);

                // R = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on (p, q).
                const Complex r_pp = c;
                const Complex r_pq = s;
                const Complex r_qp = -s * std::conj(phase);
                const Complex r_qq = c * std::conj(phase);

                // A <- A R
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * r_pp + akq * r_qp;
                    a(k, q) = akp * r_pq + akq * r_qq;
                }
                // A <- R^dagger A
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(r_pp) * apk + std::conj(r_qp) * aqk;
                    a(q, k) = std::conj(r_pq) * apk + std::conj(r_qq) * aqk;
                }
                a(p, q) = Complex(0);
                a(q, p) = Complex(0);
                a(p, p) = Complex(a(p, p).real(), 0);
                a(q, q) = Complex(a(q, q).real(), 0);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * r_pp + vkq * r_qp;
                    v(k, q) = vkp * r_pq + vkq * r_qq;
                }
            }
        }
    }
    if (sweep == kMaxSweeps) {
        std::ostringstream os;
        os << "Jacobi eigensolver did not converge after " << kMaxSweeps
           << " sweeps; residual off-diagonal norm " << detail::off_diagonal_norm(a);
        throw ConvergenceError(os.str());
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() < a(y, y).real();
    });

    EigenSystem<Scalar> result{RVector<Scalar>(n), CMatrix<Scalar>(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        result.eigenvalues(k) = a(src, src).real();
        result.eigenvectors.col(k) = v.col(src);
    }
    return result;
}

/// U = V diag(e^{-i lambda_k t}) V^dagger.
template <typename Scalar>
UnitaryMatrix<Scalar> propagator(const EigenSystem<Scalar>& eig, Scalar t) {
    if (!std::isfinite(t)) throw ValidationError("propagator time must be finite");
    using Complex = std::complex<Scalar>;
    CVector<Scalar> phases(eig.dim());
    for (Eigen::Index k = 0; k < eig.dim(); ++k)
        phases(k) = std::exp(Complex(0, -eig.eigenvalues(k) * t));
    return {eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint()};
}

/// e^{-iHt} by a truncated Taylor series with scaling and squaring.
///
/// Scales by 2^-s so that ||Ht||_inf / 2^s <= 0.5, sums terms until the term
/// norm falls below 1e-16, then squares s times. Independent of hermitian_eig.
template <typename Scalar>
UnitaryMatrix<Scalar> propagator_oracle(const HermitianMatrix<Scalar>& h, Scalar t) {
    if (!std::isfinite(t)) throw ValidationError("propagator time must be finite");
    using Complex = std::complex<Scalar>;
    const Eigen::Index n = h.dim();
    const CMatrix<Scalar> ht = h.matrix() * Complex(0, -t);

    const Scalar norm = ht.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    Scalar scaled = norm;
    while (scaled > Scalar(0.5)) {
        scaled /= 2;
        ++squarings;
    }
    const CMatrix<Scalar> x = ht / std::ldexp(Scalar(1), squarings);

    CMatrix<Scalar> sum = CMatrix<Scalar>::Identity(n, n);
    CMatrix<Scalar> term = CMatrix<Scalar>::Identity(n, n);
    for (int k = 1; k < 64; ++k) {
        term = (term * x) / Scalar(k);
        sum += term;
        if (term.cwiseAbs().rowwise().sum().maxCoeff() < Scalar(1e-16)) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return {sum};
}

/// U|psi>, renormalized to absorb rounding. Basis labels carry over.
template <typename Scalar>
StateVector apply(const UnitaryMatrix<Scalar>& u, const StateVector& psi) {
    if (u.dim() != psi.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: operator is " << u.dim() << "x" << u.dim() << ", state has "
           << psi.dim() << " amplitudes";
        throw ValidationError(os.str());
    }
    const Eigen::VectorXcd out = (u.entries * psi.amplitudes().template cast<std::complex<Scalar>>())
                                     .template cast<std::complex<double>>();
    return StateVector::normalized(psi.basis(), out);
}

/// max |V diag(lambda) V^dagger - H|, elementwise.
template <typename Scalar>
Scalar reconstruction_error(const EigenSystem<Scalar>& eig, const HermitianMatrix<Scalar>& h) {
    const CMatrix<Scalar> rebuilt = eig.eigenvectors *
                                    eig.eigenvalues.template cast<std::complex<Scalar>>().asDiagonal() *
                                    eig.eigenvectors.adjoint();
    return (rebuilt - h.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace fluxqed
