#pragma once

// Dense fixed-size complex linear algebra for 2- and 4-dimensional operators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>

namespace rotent {

using cplx = std::complex<double>;

inline constexpr cplx I_unit{0.0, 1.0};

/// e^{i phi}
inline cplx expi(double phi) { return {std::cos(phi), std::sin(phi)}; }

template <std::size_t N>
using Vector = std::array<cplx, N>;

using Ket2 = Vector<2>;

/// Row-major N x N complex matrix with value semantics.
template <std::size_t N>
class Matrix {
public:
    static constexpr std::size_t dim = N;

    constexpr Matrix() : m_{} {}

    /// Row-major initializer: Matrix<2>{a, b, c, d} is [[a, b], [c, d]].
    Matrix(std::initializer_list<cplx> entries) : m_{} {
        std::size_t k = 0;
        for (const cplx& e : entries) {
            if (k >= N * N) break;
            m_[k++] = e;
        }
    }

    static Matrix identity() {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i) r(i, i) = 1.0;
        return r;
    }

    static Matrix diagonal(const std::array<cplx, N>& d) {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i) r(i, i) = d[i];
        return r;
    }

    cplx& operator()(std::size_t r, std::size_t c) { return m_[r * N + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return m_[r * N + c]; }

    Matrix adjoint() const {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    Matrix transpose() const {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    Matrix conjugate() const {
        Matrix r;
        for (std::size_t k = 0; k < N * N; ++k) r.m_[k] = std::conj(m_[k]);
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    Vector<N> column(std::size_t c) const {
        Vector<N> v;
        for (std::size_t i = 0; i < N; ++i) v[i] = (*this)(i, c);
        return v;
    }

    Vector<N> row(std::size_t r) const {
        Vector<N> v;
        for (std::size_t j = 0; j < N; ++j) v[j] = (*this)(r, j);
        return v;
    }

    void set_column(std::size_t c, const Vector<N>& v) {
        for (std::size_t i = 0; i < N; ++i) (*this)(i, c) = v[i];
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) m_[k] += o.m_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) m_[k] -= o.m_[k];
        return *this;
    }
    Matrix& operator*=(cplx s) {
        for (cplx& e : m_) e *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) { return a *= -1.0; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, double s) { return a *= cplx{s}; }
    friend Matrix operator*(double s, Matrix a) { return a *= cplx{s}; }
    friend Matrix operator/(Matrix a, double s) { return a *= cplx{1.0 / s}; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend Vector<N> operator*(const Matrix& a, const Vector<N>& v) {
        Vector<N> r{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r[i] += a(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.m_ == b.m_; }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < N; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < N; ++j) os << (j ? ", " : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    std::array<cplx, N * N> m_;
};

using Op2 = Matrix<2>;
using Op4 = Matrix<4>;

// ---- vector helpers ----

template <std::size_t N>
cplx inner(const Vector<N>& a, const Vector<N>& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

template <std::size_t N>
double norm(const Vector<N>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

template <std::size_t N>
Vector<N> scaled(Vector<N> v, cplx s) {
    for (cplx& x : v) x *= s;
    return v;
}

template <std::size_t N>
Vector<N> operator+(Vector<N> a, const Vector<N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
    return a;
}

template <std::size_t N>
Vector<N> operator-(Vector<N> a, const Vector<N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
    return a;
}

template <std::size_t N>
Vector<N> normalized(const Vector<N>& v) {
    return scaled(v, cplx{1.0 / norm(v)});
}

/// |a><b|
template <std::size_t N>
Matrix<N> outer(const Vector<N>& a, const Vector<N>& b) {
    Matrix<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = a[i] * std::conj(b[j]);
    return r;
}

/// max |a_i - b_i|
template <std::size_t N>
double max_abs_diff(const Vector<N>& a, const Vector<N>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Multiplies v by the phase that makes its largest-magnitude component real
/// and positive. Near-ties go to the lowest index.
template <std::size_t N>
Vector<N> canonical_phase(const Vector<N>& v) {
    double largest = 0.0;
    for (const cplx& x : v) largest = std::max(largest, std::abs(x));
    if (largest == 0.0) return v;
    for (const cplx& x : v) {
        if (std::abs(x) >= largest - 1e-9) return scaled(v, std::conj(x) / std::abs(x));
    }
    return v;
}

/// Distance between a and b after removing the best-fitting global phase.
template <std::size_t N>
double phase_insensitive_distance(const Vector<N>& a, const Vector<N>& b) {
    const cplx ov = inner(a, b);
    const cplx phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx{1.0};
    return max_abs_diff(scaled(a, phase), b);
}

// ---- matrix helpers ----

/// Entrywise infinity norm: max |m_ij|.
template <std::size_t N>
double max_abs(const Matrix<N>& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(m(i, j)));
    return d;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
    return max_abs(a - b);
}

template <std::size_t N>
double frobenius(const Matrix<N>& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

/// ||U^dagger U - I||_inf
template <std::size_t N>
double unitarity_defect(const Matrix<N>& u) {
    return max_abs(u.adjoint() * u - Matrix<N>::identity());
}

template <std::size_t N>
double hermiticity_defect(const Matrix<N>& m) {
    return max_abs(m - m.adjoint());
}

template <std::size_t N>
bool is_unitary(const Matrix<N>& u, double tol) {
    return unitarity_defect(u) <= tol;
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& m, double tol) {
    return hermiticity_defect(m) <= tol;
}

/// Smallest max |a - e^{i phi} b| over global phases phi.
template <std::size_t N>
double phase_insensitive_distance(const Matrix<N>& a, const Matrix<N>& b) {
    const cplx ov = (b.adjoint() * a).trace();
    const cplx phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx{1.0};
    return max_abs_diff(a, b * phase);
}

inline cplx det(const Op2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// ---- Kronecker products ----

/// p (x) q with p as the left (outer, path) factor.
inline Op4 kron(const Op2& p, const Op2& q) {
    Op4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = p(i, j) * q(k, l);
    return r;
}

inline Vector<4> kron(const Ket2& p, const Ket2& q) {
    return {p[0] * q[0], p[0] * q[1], p[1] * q[0], p[1] * q[1]};
}

/// blockdiag(top, bottom): top acts on path a, bottom on path b.
inline Op4 block_diag(const Op2& top, const Op2& bottom) {
    Op4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            r(i, j) = top(i, j);
            r(i + 2, j + 2) = bottom(i, j);
        }
    return r;
}

/// 2x2 sub-block (row_block, col_block) of a 4x4 matrix.
inline Op2 block(const Op4& m, std::size_t row_block, std::size_t col_block) {
    Op2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r(i, j) = m(2 * row_block + i, 2 * col_block + j);
    return r;
}

inline Op4 from_blocks(const Op2& aa, const Op2& ab, const Op2& ba, const Op2& bb) {
    Op4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            r(i, j) = aa(i, j);
            r(i, j + 2) = ab(i, j);
            r(i + 2, j) = ba(i, j);
            r(i + 2, j + 2) = bb(i, j);
        }
    return r;
}

}  // namespace rotent
