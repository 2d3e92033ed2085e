#pragma once

// Two-qubit states of a single photon: path (a, b) tensor polarization (H, V).

#include <cmath>
#include <sstream>

#include "rotent/eigen.hpp"
#include "rotent/linalg.hpp"
#include "rotent/tolerances.hpp"

namespace rotent {

/// Basis order used everywhere: path is the left tensor factor.
enum class Mode : std::size_t { aH = 0, aV = 1, bH = 2, bV = 3 };

/// Pure path (x) polarization state, amplitudes ordered (aH, aV, bH, bV).
class StateVec {
public:
    StateVec() = default;
    explicit StateVec(const Vector<4>& amp) : amp_(amp) {}
    StateVec(cplx aH, cplx aV, cplx bH, cplx bV) : amp_{aH, aV, bH, bV} {}

    static StateVec basis(Mode m) {
        StateVec s;
        s.amp_[static_cast<std::size_t>(m)] = 1.0;
        return s;
    }

    /// path (x) polarization
    static StateVec product(const Ket2& path, const Ket2& pol) { return StateVec(kron(path, pol)); }

    const cplx& operator[](std::size_t k) const { return amp_[k]; }
    cplx& operator[](std::size_t k) { return amp_[k]; }
    const cplx& operator[](Mode m) const { return amp_[static_cast<std::size_t>(m)]; }

    const Vector<4>& amplitudes() const { return amp_; }

    double norm() const { return rotent::norm(amp_); }
    StateVec normalized() const { return StateVec(rotent::normalized(amp_)); }
    bool is_normalized(double tol = Tolerances::construction) const { return std::abs(norm() - 1.0) <= tol; }

    /// Polarization ket carried by path 0 (a) or 1 (b), unnormalized.
    Ket2 polarization_on_path(std::size_t path) const { return {amp_[2 * path], amp_[2 * path + 1]}; }

    friend StateVec operator*(const Op4& op, const StateVec& s) { return StateVec(op * s.amp_); }

private:
    Vector<4> amp_{};
};

/// |psi><phi|
inline Op4 outer(const StateVec& psi, const StateVec& phi) { return outer(psi.amplitudes(), phi.amplitudes()); }

/// Hermitian, unit-trace, positive-semidefinite 4x4 density matrix.
class Density4 {
public:
    /// Validates the density-matrix invariants; throws ValidationError otherwise.
    explicit Density4(const Op4& m) : m_(m) {
        if (!is_hermitian(m, Tolerances::construction))
            throw ValidationError("Density4: matrix is not Hermitian");
        if (std::abs(m.trace() - 1.0) > Tolerances::construction)
            throw ValidationError("Density4: trace differs from 1");
        const double lowest = eigenvalues(m)[0];
        if (lowest < -Tolerances::psd_floor) {
            std::ostringstream msg;
            msg << "Density4: negative eigenvalue " << lowest;
            throw ValidationError(msg.str());
        }
    }

    static Density4 pure(const StateVec& psi) { return Density4(outer(psi, psi)); }

    const Op4& matrix() const { return m_; }

private:
    Op4 m_;
};

/// Transposes the polarization factor inside each 2x2 path block.
inline Op4 partial_transpose_pol(const Op4& m) {
    Op4 r;
    for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q)
            for (std::size_t s = 0; s < 2; ++s)
                for (std::size_t t = 0; t < 2; ++t) r(2 * p + s, 2 * q + t) = m(2 * p + t, 2 * q + s);
    return r;
}

inline Op4 partial_transpose_pol(const Density4& rho) { return partial_transpose_pol(rho.matrix()); }

namespace detail {

inline void require_normalized(const StateVec& psi, const char* who) {
    const double n = psi.norm();
    if (!(std::abs(n - 1.0) <= Tolerances::normalization)) {
        std::ostringstream msg;
        msg << who << ": state is not normalized (norm " << n << ")";
        throw ValidationError(msg.str());
    }
}

inline void require_hermitian(const Op4& m, const char* who) {
    if (!is_hermitian(m, Tolerances::hermitian)) {
        std::ostringstream msg;
        msg << who << ": operator is not Hermitian";
        throw ValidationError(msg.str());
    }
}

}  // namespace detail

/// C = 2 |a1 a4 - a2 a3| for a normalized pure state.
inline double concurrence_pure(const StateVec& psi) {
    detail::require_normalized(psi, "concurrence_pure");
    return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

/// <psi|phi>, conjugate-linear in psi.
inline cplx overlap(const StateVec& psi, const StateVec& phi) { return inner(psi.amplitudes(), phi.amplitudes()); }

/// <psi|O|psi> for Hermitian O.
inline double expectation(const Op4& obs, const StateVec& psi) {
    detail::require_hermitian(obs, "expectation");
    const cplx v = overlap(psi, obs * psi);
    if (std::abs(v.imag()) > Tolerances::compare) throw ValidationError("expectation: non-real result");
    return v.real();
}

/// Tr(O rho) for Hermitian O.
inline double expectation(const Op4& obs, const Density4& rho) {
    detail::require_hermitian(obs, "expectation");
    const cplx v = (obs * rho.matrix()).trace();
    if (std::abs(v.imag()) > Tolerances::compare) throw ValidationError("expectation: non-real result");
    return v.real();
}

}  // namespace rotent
