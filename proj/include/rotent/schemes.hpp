#pragma once

// Rotating fiber-loop interferometers: geometry, rotation-induced phases and
// the resulting path-polarization state.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rotent/optics.hpp"
#include "rotent/qcore.hpp"
#include "rotent/tolerances.hpp"

namespace rotent {

struct PhysConstants {
    static constexpr double c = 299'792'458.0;         // m/s, exact
    static constexpr double omega_earth = 7.2921e-5;   // rad/s, sidereal
};

enum class Loop { a, b };

/// Physical parameters of an interferometer. Lengths in meters.
///
/// For the double-loop scheme `r_a` and `r_b` are the small and large loop
/// radii and `fiber_length` is shared by both paths. For the single-loop
/// scheme only `r_b` (the loop radius) and `windings` enter the phase.
struct Geometry {
    Scheme kind = Scheme::double_loop;
    double r_a = 0.25;
    double r_b = 0.5;
    int windings = 10;
    double wavelength = 800e-9;
    double refractive_index = 1.46;
    double fiber_length = 2.0 * std::numbers::pi * 0.5 * 10;

    /// Loop radii r_a < r_b, N windings; fiber length 2 pi r_b N.
    static Geometry double_loop(double r_a = 0.25, double r_b = 0.5, int windings = 10,
                                double wavelength = 800e-9, double refractive_index = 1.46) {
        Geometry g;
        g.kind = Scheme::double_loop;
        g.r_a = r_a;
        g.r_b = r_b;
        g.windings = windings;
        g.wavelength = wavelength;
        g.refractive_index = refractive_index;
        g.fiber_length = 2.0 * std::numbers::pi * r_b * windings;
        g.validate();
        return g;
    }

    /// Single loop of radius r wound N times.
    static Geometry single_loop(double r = 0.5, int windings = 10, double wavelength = 800e-9,
                                double refractive_index = 1.46) {
        Geometry g;
        g.kind = Scheme::single_loop;
        g.r_a = 0.0;
        g.r_b = r;
        g.windings = windings;
        g.wavelength = wavelength;
        g.refractive_index = refractive_index;
        g.fiber_length = 2.0 * std::numbers::pi * r * windings;
        g.validate();
        return g;
    }

    /// Mean optical angular frequency 2 pi c / lambda.
    double optical_frequency() const { return 2.0 * std::numbers::pi * PhysConstants::c / wavelength; }

    /// Delta r * l (double loop) or N pi r^2 (single loop).
    double effective_area() const {
        if (kind == Scheme::double_loop) return (r_b - r_a) * fiber_length;
        return windings * std::numbers::pi * r_b * r_b;
    }

    void validate() const {
        auto fail = [](const std::string& why) { throw ValidationError("invalid geometry: " + why); };
        auto finite_positive = [](double x) { return std::isfinite(x) && x > 0.0; };
        if (!finite_positive(r_b)) fail("r_b must be positive");
        if (windings <= 0) fail("windings must be a positive integer");
        if (!finite_positive(wavelength)) fail("wavelength must be positive");
        if (!(std::isfinite(refractive_index) && refractive_index >= 1.0)) fail("refractive index must be >= 1");
        if (!finite_positive(fiber_length)) fail("fiber length must be positive");
        if (kind == Scheme::double_loop) {
            if (!finite_positive(r_a)) fail("r_a must be positive");
            if (!(r_b > r_a)) fail("r_b must exceed r_a");
        }
    }
};

/// 4 Omega omega A / c^2
inline double sagnac_phase(double omega_platform, double omega_optical, double area) {
    return 4.0 * omega_platform * omega_optical * area / (PhysConstants::c * PhysConstants::c);
}

/// Phase Omega omega r_j l / c^2 picked up on loop j of the double-loop scheme.
/// The refractive index cancels between flight time and momentum and never enters.
inline double loop_phase(double omega_platform, const Geometry& g, Loop loop) {
    if (g.kind != Scheme::double_loop) throw ValidationError("loop_phase: requires a double-loop geometry");
    const double r = loop == Loop::a ? g.r_a : g.r_b;
    return omega_platform * g.optical_frequency() * r * g.fiber_length / (PhysConstants::c * PhysConstants::c);
}

struct PathPhases {
    double a;
    double b;
};

/// Phases (phi_a, phi_b) such that the final state is
/// (1/2)(e^{-i phi_a}, e^{i phi_a}, e^{-i phi_b}, e^{i phi_b}).
/// Single loop: phi_a = phi_s / 2, phi_b = -phi_s / 2.
inline PathPhases path_phases(double omega_platform, const Geometry& g) {
    if (g.kind == Scheme::double_loop)
        return {loop_phase(omega_platform, g, Loop::a), loop_phase(omega_platform, g, Loop::b)};
    const double phi_s = sagnac_phase(omega_platform, g.optical_frequency(), g.effective_area());
    return {0.5 * phi_s, -0.5 * phi_s};
}

namespace detail {

inline StateVec state_from_phases(PathPhases p) {
    return StateVec(0.5 * expi(-p.a), 0.5 * expi(p.a), 0.5 * expi(-p.b), 0.5 * expi(p.b));
}

}  // namespace detail

/// (|a> + |b>)(|H> + |V>) / 2
inline StateVec initial_state() { return StateVec(0.5, 0.5, 0.5, 0.5); }

inline StateVec final_state_double(double omega_platform, const Geometry& g) {
    if (g.kind != Scheme::double_loop) throw ValidationError("final_state_double: wrong scheme kind");
    return detail::state_from_phases(path_phases(omega_platform, g));
}

inline StateVec final_state_single(double omega_platform, const Geometry& g) {
    if (g.kind != Scheme::single_loop) throw ValidationError("final_state_single: wrong scheme kind");
    return detail::state_from_phases(path_phases(omega_platform, g));
}

inline StateVec final_state(double omega_platform, const Geometry& g) {
    return g.kind == Scheme::double_loop ? final_state_double(omega_platform, g)
                                         : final_state_single(omega_platform, g);
}

/// Overlap S of the two path-conditioned polarization states, closed form.
inline double polarization_overlap(double omega_platform, const Geometry& g) {
    const double c2 = PhysConstants::c * PhysConstants::c;
    if (g.kind == Scheme::double_loop)
        return std::cos(omega_platform * g.optical_frequency() * (g.r_b - g.r_a) * g.fiber_length / c2);
    return std::cos(sagnac_phase(omega_platform, g.optical_frequency(), g.effective_area()));
}

/// Same overlap taken directly from the amplitudes of a state: the inner
/// product of the normalized polarization kets on paths a and b.
inline cplx bracket_overlap(const StateVec& psi) {
    const Ket2 on_a = psi.polarization_on_path(0);
    const Ket2 on_b = psi.polarization_on_path(1);
    return inner(on_a, on_b) / (norm(on_a) * norm(on_b));
}

/// Lowest positive rotation frequency (k = 0) producing a Bell state.
inline double bell_frequency(const Geometry& g) {
    g.validate();
    const double c2 = PhysConstants::c * PhysConstants::c;
    const double denom = (g.kind == Scheme::double_loop ? 2.0 : 8.0) * g.optical_frequency() * g.effective_area();
    return std::numbers::pi * c2 / denom;
}

/// (2k + 1) Omega_Bell for k in [k_min, k_max], ascending.
inline std::vector<double> bell_frequencies(const Geometry& g, int k_min, int k_max) {
    const double base = bell_frequency(g);
    std::vector<double> out;
    for (int k = k_min; k <= k_max; ++k) out.push_back((2.0 * k + 1.0) * base);
    std::sort(out.begin(), out.end());
    return out;
}

enum class BellClass { psi1, psi2, separable, intermediate };

inline std::string to_string(BellClass c) {
    switch (c) {
        case BellClass::psi1: return "psi1";
        case BellClass::psi2: return "psi2";
        case BellClass::separable: return "separable";
        case BellClass::intermediate: return "intermediate";
    }
    return "?";
}

/// Classifies Omega / Omega_Bell: 1 mod 4 -> psi1, 3 mod 4 -> psi2,
/// even -> separable, anything else -> intermediate.
inline BellClass which_bell_state(double omega_platform, const Geometry& g) {
    const double ratio = omega_platform / bell_frequency(g);
    const double m = std::round(ratio);
    if (std::abs(ratio - m) > Tolerances::bell_ratio) return BellClass::intermediate;
    const long long k = static_cast<long long>(m);
    const long long r = ((k % 4) + 4) % 4;
    if (r == 1) return BellClass::psi1;
    if (r == 3) return BellClass::psi2;
    return BellClass::separable;
}

/// Effective area needed for Omega_E to be the first Bell frequency of the
/// double-loop scheme: pi c^2 / (2 omega Omega_E).
inline double earth_area(double wavelength, double omega_earth = PhysConstants::omega_earth) {
    if (!(wavelength > 0.0) || !(omega_earth > 0.0)) throw ValidationError("earth_area: inputs must be positive");
    const double omega = 2.0 * std::numbers::pi * PhysConstants::c / wavelength;
    return std::numbers::pi * PhysConstants::c * PhysConstants::c / (2.0 * omega * omega_earth);
}

}  // namespace rotent
