#pragma once

// Bell-state analysis of the interferometer output: Bell bases, the
// projection gates, detector probabilities, witnesses and Werner noise.

#include <array>
#include <cmath>
#include <string>

#include "rotent/eigen.hpp"
#include "rotent/gatesynth.hpp"
#include "rotent/optics.hpp"
#include "rotent/qcore.hpp"
#include "rotent/schemes.hpp"
#include "rotent/tolerances.hpp"

namespace rotent {

struct BellBasis {
    Scheme scheme = Scheme::double_loop;
    std::array<StateVec, 4> states;

    const StateVec& operator[](std::size_t j) const { return states[j]; }
};

struct DetectorReport {
    double omega = 0.0;
    std::array<double, 4> probs{};
    double concurrence = 0.0;
    double witness1 = 0.0;
    double witness2 = 0.0;
};

struct WernerResult {
    double min_ppt_eigenvalue = 0.0;
    double witness_value = 0.0;
    bool entangled = false;
};

namespace detail {

/// Operator pairing psi1 -> psi3 and psi2 -> psi4: a path swap for the double
/// loop (paths exchange their phases), sigma_z on the path for the single
/// loop (the two paths already carry opposite phases).
inline Op4 bell_companion(Scheme s) {
    return s == Scheme::double_loop ? path_swap() : kron(pauli2(Axis::z), Op2::identity());
}

inline Vector<4> project_out(Vector<4> v, const std::array<StateVec, 4>& basis, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) v = v - scaled(basis[k].amplitudes(), inner(basis[k].amplitudes(), v));
    return v;
}

/// Gram-Schmidt step that keeps the phase of the raw candidate; falls back to
/// computational kets if the candidate lies in the span already built.
inline StateVec complete(const Vector<4>& candidate, const std::array<StateVec, 4>& basis, std::size_t count) {
    Vector<4> v = project_out(candidate, basis, count);
    for (std::size_t k = 0; norm(v) < 1e-6 && k < 4; ++k)
        v = project_out(StateVec::basis(static_cast<Mode>(k)).amplitudes(), basis, count);
    return StateVec(normalized(v));
}

inline void require_scheme(const Geometry& g, Scheme s, const char* who) {
    if (g.kind != s) throw ValidationError(std::string(who) + ": scheme does not match the geometry");
}

}  // namespace detail

/// psi1 and psi2 are the output states at Omega_Bell and 3 Omega_Bell; psi3
/// and psi4 are their images under the scheme's companion operator,
/// orthonormalized against the states already built.
inline BellBasis bell_basis(Scheme scheme, const Geometry& g) {
    detail::require_scheme(g, scheme, "bell_basis");
    g.validate();
    if (scheme == Scheme::double_loop && !(g.r_b - g.r_a > 0.0))
        throw ValidationError("bell_basis: degenerate geometry (r_a == r_b)");

    const double base = bell_frequency(g);
    BellBasis out;
    out.scheme = scheme;
    out.states[0] = final_state(base, g);
    out.states[1] = detail::complete(final_state(3.0 * base, g).amplitudes(), out.states, 1);
    const Op4 companion = detail::bell_companion(scheme);
    out.states[2] = detail::complete((companion * out.states[0]).amplitudes(), out.states, 2);
    out.states[3] = detail::complete((companion * out.states[1]).amplitudes(), out.states, 3);
    return out;
}

inline BellBasis bell_basis(const Geometry& g) { return bell_basis(g.kind, g); }

/// Double loop: blockdiag(QWP(pi/4), QWP(pi/4)) * PBS(pi/4).
/// Single loop: PBS * blockdiag(QWP(pi/4), QWP(pi/4)).
inline Op4 bell_gate(Scheme scheme) {
    const Op2 q = qwp(std::numbers::pi / 4.0);
    const Op4 plates = block_diag(q, q);
    return scheme == Scheme::double_loop ? plates * pbs_45() : pbs_standard() * plates;
}

/// P_Bj = |<psi_j|psi_final>|^2
inline std::array<double, 4> detector_probs(double omega, const Geometry& g) {
    const BellBasis basis = bell_basis(g);
    const StateVec psi = final_state(omega, g);
    std::array<double, 4> p{};
    for (std::size_t j = 0; j < 4; ++j) p[j] = std::norm(overlap(basis[j], psi));
    return p;
}

inline double witness_value(double omega, const Geometry& g, WitnessId id) {
    detail::require_scheme(g, id.scheme, "witness_value");
    return expectation(witness(id), final_state(omega, g));
}

inline DetectorReport detector_report(double omega, const Geometry& g) {
    DetectorReport r;
    r.omega = omega;
    r.probs = detector_probs(omega, g);
    const StateVec psi = final_state(omega, g);
    r.concurrence = concurrence_pure(psi);
    r.witness1 = expectation(witness({g.kind, 1}), psi);
    r.witness2 = expectation(witness({g.kind, 2}), psi);
    return r;
}

/// rho = p |psi><psi| + (1 - p) I / 4 checked with the PPT criterion and
/// with the witness built from the most negative eigenvector of the partial
/// transpose of the pure state.
inline WernerResult werner_analysis(double p, const StateVec& bell) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner_analysis: p must lie in [0, 1]");
    detail::require_normalized(bell, "werner_analysis");
    if (std::abs(concurrence_pure(bell) - 1.0) > Tolerances::normalization)
        throw ValidationError("werner_analysis: state is not maximally entangled");

    const Op4 pure = outer(bell, bell);
    const Density4 rho(pure * p + Op4::identity() * ((1.0 - p) / 4.0));
    const StateVec target(hermitian_eig(partial_transpose_pol(pure))[0].vector);
    const Op4 w = partial_transpose_pol(outer(target, target));

    WernerResult r;
    r.min_ppt_eigenvalue = eigenvalues(partial_transpose_pol(rho))[0];
    r.witness_value = expectation(w, rho);
    r.entangled = p > 1.0 / 3.0;
    return r;
}

/// Witness reconstructed from three separately measured Pauli pairs, each
/// read out by counting photons at the ports of its synthesized gate.
inline double measure_witness_via_paulis(double omega, const Geometry& g, WitnessId id) {
    detail::require_scheme(g, id.scheme, "measure_witness_via_paulis");
    const StateVec psi = final_state(omega, g);
    double sum = 1.0;
    for (const PauliTerm& t : witness_terms(id))
        sum += t.coefficient * port_expectation(synthesize(pauli_pair(t.path, t.pol)), psi);
    return 0.25 * sum;
}

}  // namespace rotent
