#pragma once

#include <stdexcept>
#include <string>

namespace rotent {

/// Numerical tolerances shared by every module.
struct Tolerances {
    /// Default comparison tolerance for computed quantities.
    static constexpr double compare = 1e-10;
    /// Tolerance for objects built directly from closed-form expressions.
    static constexpr double construction = 1e-12;
    /// Hermiticity check applied before eigen-decomposition.
    static constexpr double hermitian = 1e-10;
    /// Accepted norm deviation for "normalized" input states.
    static constexpr double normalization = 1e-9;
    /// Smallest eigenvalue still accepted as positive semidefinite.
    static constexpr double psd_floor = 1e-10;
    /// Two eigenvalues closer than this are treated as one degenerate level.
    static constexpr double degeneracy = 1e-9;
    /// Relative tolerance on Omega / Omega_Bell when classifying Bell states.
    static constexpr double bell_ratio = 1e-9;
    /// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
    static constexpr double jacobi_off_diagonal = 1e-12;
    /// Largest residual a synthesized gate plan may carry.
    static constexpr double synthesis_residual = 1e-9;
};

/// A precondition on an input value was violated.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical pipeline failed to meet its residual contract.
class SynthesisError : public std::runtime_error {
public:
    explicit SynthesisError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rotent
