#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rotent/linalg.hpp"
#include "rotent/tolerances.hpp"

namespace rotent {

template <std::size_t N>
struct EigenPair {
    double value;
    Vector<N> vector;
};

template <std::size_t N>
using EigenSystem = std::array<EigenPair<N>, N>;

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Pivots are visited in the fixed order (0,1), (0,2), ..., (N-2,N-1) so the
/// result is reproducible bit-for-bit. Eigenvalues come back ascending; each
/// eigenvector has its largest-magnitude component made real-positive.
/// Throws ValidationError when m is not Hermitian within Tolerances::hermitian.
template <std::size_t N>
EigenSystem<N> hermitian_eig(const Matrix<N>& m) {
    const double defect = hermiticity_defect(m);
    if (!(defect <= Tolerances::hermitian)) {
        std::ostringstream msg;
        msg << "hermitian_eig: matrix is not Hermitian (defect " << defect << ")";
        throw ValidationError(msg.str());
    }

    // Symmetrize so rounding noise in the input cannot bias the rotations.
    Matrix<N> a = (m + m.adjoint()) * 0.5;
    Matrix<N> v = Matrix<N>::identity();

    const double scale = std::max(1.0, frobenius(a));
    for (int sweep = 0; sweep < 64; ++sweep) {
        if (detail::off_diagonal_norm(a) <= Tolerances::jacobi_off_diagonal * 1e-3 * scale) break;
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cplx phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J = diag-phase * real Givens rotation on (p, q); a <- J^dagger a J.
                Matrix<N> j = Matrix<N>::identity();
                j(p, p) = c;
                j(p, q) = s;
                j(q, p) = -s * std::conj(phase);
                j(q, q) = c * std::conj(phase);
                a = j.adjoint() * a * j;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                v = v * j;
            }
        }
    }

    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    EigenSystem<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out[k].value = a(order[k], order[k]).real();
        out[k].vector = canonical_phase(v.column(order[k]));
    }
    return out;
}

template <std::size_t N>
std::array<double, N> eigenvalues(const Matrix<N>& m) {
    const auto sys = hermitian_eig(m);
    std::array<double, N> vals{};
    for (std::size_t k = 0; k < N; ++k) vals[k] = sys[k].value;
    return vals;
}

}  // namespace rotent
