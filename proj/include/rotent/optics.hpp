#pragma once

// Optical-element unitaries and fixed two-qubit operators (Paulis, witnesses).

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rotent/linalg.hpp"
#include "rotent/qcore.hpp"

namespace rotent {

enum class Axis { identity, x, y, z };
enum class Subsystem { path, polarization };
enum class Scheme { double_loop, single_loop };

struct PauliLabel {
    Axis axis;
    Subsystem subsystem;
};

struct WitnessId {
    Scheme scheme;
    int index;  // 1 or 2
};

/// coefficient * (sigma_path (x) sigma_pol)
struct PauliTerm {
    double coefficient;
    Axis path;
    Axis pol;
};

inline std::string to_string(Axis a) {
    switch (a) {
        case Axis::identity: return "i";
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

inline std::string to_string(Scheme s) { return s == Scheme::double_loop ? "double" : "single"; }

inline Op2 pauli2(Axis a) {
    switch (a) {
        case Axis::x: return Op2{0.0, 1.0, 1.0, 0.0};
        case Axis::y: return Op2{0.0, -I_unit, I_unit, 0.0};
        case Axis::z: return Op2{1.0, 0.0, 0.0, -1.0};
        case Axis::identity: break;
    }
    return Op2::identity();
}

/// Pauli on one subsystem, identity on the other.
inline Op4 pauli(PauliLabel label) {
    const Op2 s = pauli2(label.axis);
    return label.subsystem == Subsystem::path ? kron(s, Op2::identity()) : kron(Op2::identity(), s);
}

/// sigma_path (x) sigma_pol
inline Op4 pauli_pair(Axis path, Axis pol) { return kron(pauli2(path), pauli2(pol)); }

/// Quarter-wave plate with fast axis at theta.
inline Op2 qwp(double theta) {
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    const double k = 1.0 / std::numbers::sqrt2;
    return Op2{k * cplx{1.0, -c}, k * cplx{0.0, -s}, k * cplx{0.0, -s}, k * cplx{1.0, c}};
}

/// Half-wave plate with fast axis at theta.
inline Op2 hwp(double theta) {
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    return Op2{cplx{0.0, -c}, cplx{0.0, -s}, cplx{0.0, -s}, cplx{0.0, c}};
}

/// e^{i delta} on both polarizations.
inline Op2 phase_shifter(double delta) { return Op2::identity() * expi(delta); }

/// Polarizing beam splitter rotated by 45 degrees: transmits diagonal, swaps
/// the anti-diagonal component between paths.
inline Op4 pbs_45() {
    const double k = 1.0 / std::numbers::sqrt2;
    const StateVec aD(k, k, 0.0, 0.0);
    const StateVec aA(k, -k, 0.0, 0.0);
    const StateVec bD(0.0, 0.0, k, k);
    const StateVec bA(0.0, 0.0, k, -k);
    return outer(aD, aD) + outer(bD, bD) + outer(aA, bA) + outer(bA, aA);
}

/// Standard PBS: H stays on its path, V swaps paths.
inline Op4 pbs_standard() {
    const StateVec aH = StateVec::basis(Mode::aH);
    const StateVec aV = StateVec::basis(Mode::aV);
    const StateVec bH = StateVec::basis(Mode::bH);
    const StateVec bV = StateVec::basis(Mode::bV);
    return outer(aH, aH) + outer(bH, bH) + outer(aV, bV) + outer(bV, aV);
}

/// Local Pauli decomposition of each fidelity-based witness:
/// W = (1/4) [I + sum_k c_k sigma_path sigma_pol].
inline std::vector<PauliTerm> witness_terms(WitnessId id) {
    if (id.index != 1 && id.index != 2) throw ValidationError("witness index must be 1 or 2");
    const double s = id.index == 1 ? 1.0 : -1.0;
    if (id.scheme == Scheme::double_loop) {
        return {{s, Axis::x, Axis::y}, {s, Axis::y, Axis::z}, {1.0, Axis::z, Axis::x}};
    }
    return {{-1.0, Axis::x, Axis::x}, {-s, Axis::y, Axis::z}, {-s, Axis::z, Axis::y}};
}

inline Op4 witness(WitnessId id) {
    Op4 w = Op4::identity();
    for (const PauliTerm& t : witness_terms(id)) w += pauli_pair(t.path, t.pol) * t.coefficient;
    return w * 0.25;
}

}  // namespace rotent
