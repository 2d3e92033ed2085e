#pragma once

// Synthesis of the universal single-photon two-qubit gate: an observable is
// turned into a unitary S that routes its eigenstates to the four output
// modes, S is split into cosine-sine form, and the resulting 2x2 elements are
// realized as QWP-HWP-QWP-phase-shifter stacks inside a Mach-Zehnder network.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "rotent/eigen.hpp"
#include "rotent/optics.hpp"
#include "rotent/qcore.hpp"
#include "rotent/tolerances.hpp"

namespace rotent {

/// First QWP (alpha), HWP (beta), second QWP (gamma), phase shifter (delta).
/// Canonical ranges: alpha, gamma in (-pi/2, pi/2], beta in (-pi/4, pi/4],
/// delta in (-pi, pi].
struct WaveplateSetting {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

/// Cosine-sine form of a 4x4 unitary S = [[S_RR, S_RL], [S_LR, S_LL]]:
///   S_RR = sum_j cos(theta_j) |psibar_j><psi_j|
///   S_LL = sum_j cos(theta_j) |chibar_j><chi_j|
///   S_RL = -i sum_j sin(theta_j) |psibar_j><chi_j|
///   S_LR = -i sum_j sin(theta_j) |chibar_j><psi_j|
struct CsDecomposition {
    std::array<double, 2> theta{};
    std::array<Ket2, 2> psi{};
    std::array<Ket2, 2> psibar{};
    std::array<Ket2, 2> chi{};
    std::array<Ket2, 2> chibar{};
};

/// The four polarization elements of the network.
struct ArmElements {
    Op2 v1;  // input port of path a
    Op2 vr;  // arm R
    Op2 vl;  // arm L
    Op2 v2;  // output port of path a
};

struct PlanResiduals {
    double conj_a = 0.0;         // ||S A S^dag - sigma_z^path||
    double conj_b = 0.0;         // ||S B S^dag - sigma_z^pol||
    double unitarity = 0.0;      // ||S^dag S - I||
    double cs_reassembly = 0.0;  // blocks rebuilt from the CS form vs S
    double network = 0.0;        // assembled network vs S
    double waveplates = 0.0;     // worst angle -> matrix reconstruction
    double routing = 0.0;        // 1 - min_j P(e_j exits port j)

    double worst() const {
        return std::max({conj_a, conj_b, unitarity, cs_reassembly, network, waveplates, routing});
    }
};

struct GatePlan {
    Op4 observable;
    std::array<StateVec, 4> eigenstates;
    std::array<double, 4> eigenvalues{};  // eigenvalue measured at output port j
    Op4 a;
    Op4 b;
    Op4 s;
    CsDecomposition cs;
    ArmElements elements;
    std::array<WaveplateSetting, 4> settings{};  // v1, vr, vl, v2
    Op4 network;
    PlanResiduals residuals;

    Op2 s_rr() const { return block(s, 0, 0); }
    Op2 s_rl() const { return block(s, 0, 1); }
    Op2 s_lr() const { return block(s, 1, 0); }
    Op2 s_ll() const { return block(s, 1, 1); }
};

namespace detail {

inline double max_gram_defect(const std::array<StateVec, 4>& v) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            d = std::max(d, std::abs(overlap(v[i], v[j]) - (i == j ? 1.0 : 0.0)));
    return d;
}

inline void require_orthonormal(const std::array<StateVec, 4>& v, const char* who) {
    if (max_gram_defect(v) > Tolerances::compare) {
        throw ValidationError(std::string(who) + ": eigenvectors are not orthonormal");
    }
}

/// Builds an orthonormal pair from raw estimates whose reliability is given
/// by `weight`. The better-conditioned estimate is normalized, the other is
/// its orthogonal complement with the phase of its own estimate.
inline std::array<Ket2, 2> orthonormal_pair(const std::array<Ket2, 2>& raw, const std::array<double, 2>& weight) {
    const std::size_t lead = weight[1] > weight[0] ? 1 : 0;
    const std::size_t other = 1 - lead;
    std::array<Ket2, 2> out;
    out[lead] = norm(raw[lead]) > 0.0 ? normalized(raw[lead]) : Ket2{1.0, 0.0};
    Ket2 complement{-std::conj(out[lead][1]), std::conj(out[lead][0])};
    const cplx ov = inner(complement, raw[other]);
    if (std::abs(ov) > 0.0) complement = scaled(complement, ov / std::abs(ov));
    out[other] = complement;
    return out;
}

/// Wraps x into (-period/2, period/2].
inline double wrap_angle(double x, double period) {
    return x - period * std::ceil((x - 0.5 * period) / period);
}

inline Op4 path_swap() { return kron(pauli2(Axis::x), Op2::identity()); }

}  // namespace detail

/// A = +|e1><e1| + |e2><e2| - |e3><e3| - |e4><e4|,
/// B = +|e1><e1| - |e2><e2| + |e3><e3| - |e4><e4|.
inline std::pair<Op4, Op4> build_AB(const std::array<StateVec, 4>& eig) {
    detail::require_orthonormal(eig, "build_AB");
    constexpr std::array<double, 4> sa{1.0, 1.0, -1.0, -1.0};
    constexpr std::array<double, 4> sb{1.0, -1.0, 1.0, -1.0};
    Op4 a, b;
    for (std::size_t j = 0; j < 4; ++j) {
        const Op4 proj = outer(eig[j], eig[j]);
        a += proj * sa[j];
        b += proj * sb[j];
    }
    return {a, b};
}

/// S = sum_j |c_j><e_j| sends eigenstate j to computational mode j, so that
/// S A S^dag = sigma_z^path and S B S^dag = sigma_z^pol.
inline Op4 build_S(const std::array<StateVec, 4>& eig) {
    detail::require_orthonormal(eig, "build_S");
    Op4 s;
    for (std::size_t j = 0; j < 4; ++j) s += outer(StateVec::basis(static_cast<Mode>(j)), eig[j]);
    return s;
}

struct OrderedEigenbasis {
    std::array<double, 4> values{};
    std::array<StateVec, 4> vectors;
};

/// Eigenbasis of a Hermitian observable with eigenvalues in descending order.
///
/// Degenerate levels are resolved by diagonalizing, inside the eigenspace,
/// the first of sigma_z^path, sigma_z^pol, sigma_z^path sigma_z^pol whose
/// restriction has a non-degenerate spectrum; the resulting vectors are
/// ordered by descending probe value. If no probe splits the level the
/// solver's own basis is kept.
inline OrderedEigenbasis ordered_eigenbasis(const Op4& observable) {
    const auto sys = hermitian_eig(observable);
    OrderedEigenbasis out;
    std::array<EigenPair<4>, 4> desc;
    for (std::size_t k = 0; k < 4; ++k) desc[k] = sys[3 - k];

    const std::array<Op4, 3> probes{pauli_pair(Axis::z, Axis::identity), pauli_pair(Axis::identity, Axis::z),
                                    pauli_pair(Axis::z, Axis::z)};
    std::size_t start = 0;
    while (start < 4) {
        std::size_t end = start + 1;
        while (end < 4 && std::abs(desc[end].value - desc[start].value) <= Tolerances::degeneracy) ++end;
        const std::size_t size = end - start;
        double level = 0.0;
        for (std::size_t k = start; k < end; ++k) level += desc[k].value;
        level /= static_cast<double>(size);

        std::vector<Vector<4>> chosen;
        if (size > 1 && size < 4) {
            Op4 proj;
            for (std::size_t k = start; k < end; ++k) proj += outer(desc[k].vector, desc[k].vector);
            const Op4 complement = Op4::identity() - proj;
            for (const Op4& probe : probes) {
                // Push the complement far above the probe spectrum [-1, 1].
                const auto restricted = hermitian_eig(proj * probe * proj + complement * 10.0);
                bool split = true;
                for (std::size_t k = 0; k + 1 < size; ++k)
                    if (restricted[k + 1].value - restricted[k].value < 1e-6) split = false;
                if (!split) continue;
                for (std::size_t k = size; k-- > 0;) chosen.push_back(restricted[k].vector);
                break;
            }
        }
        if (chosen.empty())
            for (std::size_t k = start; k < end; ++k) chosen.push_back(desc[k].vector);

        for (std::size_t k = 0; k < size; ++k) {
            out.values[start + k] = level;
            out.vectors[start + k] = StateVec(canonical_phase(chosen[k]));
        }
        start = end;
    }
    return out;
}

/// Rebuilds the four blocks of S from a cosine-sine decomposition.
inline Op4 reassemble(const CsDecomposition& cs) {
    Op2 rr, ll, rl, lr;
    for (std::size_t j = 0; j < 2; ++j) {
        const double c = std::cos(cs.theta[j]);
        const double s = std::sin(cs.theta[j]);
        rr += outer(cs.psibar[j], cs.psi[j]) * c;
        ll += outer(cs.chibar[j], cs.chi[j]) * c;
        rl += outer(cs.psibar[j], cs.chi[j]) * cplx{0.0, -s};
        lr += outer(cs.chibar[j], cs.psi[j]) * cplx{0.0, -s};
    }
    return from_blocks(rr, rl, lr, ll);
}

/// Cosine-sine decomposition of a 4x4 unitary.
///
/// psi_j and cos^2(theta_j) come from the eigen-decomposition of
/// S_RR^dag S_RR. The column S (psi_j, 0) = (cos psibar_j, -i sin chibar_j)
/// then fixes psibar_j and chibar_j together, and
/// chi_j = cos S_LL^dag chibar_j - i sin S_RL^dag psibar_j,
/// so all four block equations hold with one consistent phase choice.
/// Whichever of cos/sin vanishes, the missing vector is completed to an
/// orthonormal pair.
inline CsDecomposition cs_decompose(const Op4& s) {
    if (!is_unitary(s, Tolerances::compare)) throw ValidationError("cs_decompose: S is not unitary");
    const Op2 rr = block(s, 0, 0), rl = block(s, 0, 1), lr = block(s, 1, 0), ll = block(s, 1, 1);

    const auto sys = hermitian_eig(rr.adjoint() * rr);
    CsDecomposition cs;
    std::array<Ket2, 2> top, bottom;
    std::array<double, 2> cosines{}, sines{};
    for (std::size_t j = 0; j < 2; ++j) {
        cs.psi[j] = sys[j].vector;
        top[j] = rr * cs.psi[j];
        bottom[j] = scaled(lr * cs.psi[j], I_unit);
        cs.theta[j] = std::atan2(norm(bottom[j]), norm(top[j]));
        cosines[j] = std::cos(cs.theta[j]);
        sines[j] = std::sin(cs.theta[j]);
    }
    cs.psibar = detail::orthonormal_pair(top, cosines);
    cs.chibar = detail::orthonormal_pair(bottom, sines);
    for (std::size_t j = 0; j < 2; ++j) {
        cs.chi[j] = scaled(ll.adjoint() * cs.chibar[j], cplx{cosines[j]}) +
                    scaled(rl.adjoint() * cs.psibar[j], cplx{0.0, -sines[j]});
    }

    const double err = max_abs_diff(reassemble(cs), s);
    if (err > Tolerances::compare) {
        std::ostringstream msg;
        msg << "cs_decompose: phase-consistent decomposition failed (residual " << err << ")";
        throw SynthesisError(msg.str());
    }
    return cs;
}

///   V1 = -i sum |chi_j><psi_j|         V2 = i sum |psibar_j><chibar_j|
///   VR = sum e^{-i theta_j} |chibar_j><chi_j|
///   VL = sum e^{+i theta_j} |chibar_j><chi_j|
inline ArmElements build_V(const CsDecomposition& cs) {
    ArmElements e;
    for (std::size_t j = 0; j < 2; ++j) {
        e.v1 += outer(cs.chi[j], cs.psi[j]) * cplx{0.0, -1.0};
        e.v2 += outer(cs.psibar[j], cs.chibar[j]) * cplx{0.0, 1.0};
        e.vr += outer(cs.chibar[j], cs.chi[j]) * expi(-cs.theta[j]);
        e.vl += outer(cs.chibar[j], cs.chi[j]) * expi(cs.theta[j]);
    }
    return e;
}

/// Symmetric 50:50 beam splitter on the path qubit.
inline Op2 beam_splitter() {
    const double k = 1.0 / std::numbers::sqrt2;
    return Op2{k, cplx{0.0, k}, cplx{0.0, k}, k};
}

/// Global phase of the network. With it, and with the input ports labeled
/// crosswise, a balanced interferometer with every element set to identity
/// is exactly the identity map.
inline constexpr cplx network_phase{0.0, -1.0};

/// Composes V1 (input, path a) -> BS -> VR | VL (arms) -> BS -> V2 (output, path a).
inline Op4 network_assemble(const ArmElements& e, const Op2& bs = beam_splitter()) {
    const Op4 splitter = kron(bs, Op2::identity());
    const Op2 id = Op2::identity();
    return block_diag(e.v2, id) * splitter * block_diag(e.vr, e.vl) * splitter * detail::path_swap() *
           block_diag(e.v1, id) * network_phase;
}

/// e^{i delta} QWP(gamma) HWP(beta) QWP(alpha)
inline Op2 waveplate_matrix(const WaveplateSetting& w) {
    return qwp(w.gamma) * hwp(w.beta) * qwp(w.alpha) * expi(w.delta);
}

/// Angles realizing a 2x2 unitary with the QWP-HWP-QWP stack.
///
/// QWP(t) and HWP(t) are pi/2 and pi rotations about an axis in the x-z
/// plane tilted by 2t, so the stack equals -Ry(2 gamma) Rx(2 alpha + 2 gamma
/// - 4 beta) Ry(-2 alpha). A Y-X-Y Euler decomposition of V / sqrt(det V)
/// therefore yields the angles in closed form; the phase shifter absorbs
/// det V and the residual sign.
inline WaveplateSetting waveplate_angles(const Op2& v) {
    if (!is_unitary(v, Tolerances::compare)) throw ValidationError("waveplate_angles: V is not unitary");
    const double pi = std::numbers::pi;
    const double det_phase = 0.5 * std::arg(det(v));
    const Op2 u = v * expi(-det_phase);

    // u = w I - i (x X + y Y + z Z) = Ry(a) Rx(b) Ry(c) with
    //   (w, y) = cos(b/2) (cos, sin)((a + c)/2),
    //   (x, z) = sin(b/2) (cos, sin)((c - a)/2).
    const auto coeff = [&](Axis k) { return 0.5 * (cplx{0.0, 1.0} * (pauli2(k) * u).trace()).real(); };
    const double qw = 0.5 * u.trace().real();
    const double qx = coeff(Axis::x), qy = coeff(Axis::y), qz = coeff(Axis::z);
    const double even = std::hypot(qw, qy);
    const double odd = std::hypot(qx, qz);
    const double b = 2.0 * std::atan2(odd, even);
    const double sum = 2.0 * std::atan2(qy, qw);
    const double diff = 2.0 * std::atan2(qz, qx);
    double a = 0.5 * (sum - diff), c = 0.5 * (sum + diff);
    if (odd <= 1e-12) {
        a = sum;
        c = 0.0;
    } else if (even <= 1e-12) {
        a = -diff;
        c = 0.0;
    }

    WaveplateSetting w;
    w.gamma = detail::wrap_angle(0.5 * a, pi);
    w.alpha = detail::wrap_angle(-0.5 * c, pi);
    // HWP(beta + pi/2) = -HWP(beta); the sign is left to the phase shifter.
    w.beta = detail::wrap_angle(0.25 * (a - c - b), 0.5 * pi);
    const Op2 stack = qwp(w.gamma) * hwp(w.beta) * qwp(w.alpha);
    const bool flipped = max_abs_diff(stack, u) > max_abs_diff(stack, -u);
    w.delta = detail::wrap_angle(det_phase + (flipped ? pi : 0.0), 2.0 * pi);

    const double err = max_abs_diff(waveplate_matrix(w), v);
    if (err > Tolerances::compare) {
        std::ostringstream msg;
        msg << "waveplate_angles: reconstruction residual " << err;
        throw SynthesisError(msg.str());
    }
    return w;
}

/// Probability of each output mode (path, polarization) after the network.
inline std::array<double, 4> port_probabilities(const Op4& network, const StateVec& psi) {
    const StateVec out = network * psi;
    return {std::norm(out[0]), std::norm(out[1]), std::norm(out[2]), std::norm(out[3])};
}

/// Full pipeline from a Hermitian observable to a verified gate plan.
/// Throws ValidationError for non-Hermitian or fully degenerate observables
/// and SynthesisError when any residual exceeds Tolerances::synthesis_residual.
inline GatePlan synthesize(const Op4& observable) {
    if (!is_hermitian(observable, Tolerances::hermitian))
        throw ValidationError("synthesize: observable is not Hermitian");
    GatePlan plan;
    plan.observable = observable;

    const OrderedEigenbasis basis = ordered_eigenbasis(observable);
    if (basis.values[0] - basis.values[3] <= Tolerances::degeneracy)
        throw ValidationError("synthesize: fully degenerate spectrum, no routing defined");
    plan.eigenvalues = basis.values;
    plan.eigenstates = basis.vectors;

    std::tie(plan.a, plan.b) = build_AB(plan.eigenstates);
    plan.s = build_S(plan.eigenstates);
    plan.cs = cs_decompose(plan.s);
    plan.elements = build_V(plan.cs);
    plan.network = network_assemble(plan.elements);

    const std::array<Op2, 4> els{plan.elements.v1, plan.elements.vr, plan.elements.vl, plan.elements.v2};
    for (std::size_t k = 0; k < 4; ++k) {
        plan.settings[k] = waveplate_angles(els[k]);
        plan.residuals.waveplates =
            std::max(plan.residuals.waveplates, max_abs_diff(waveplate_matrix(plan.settings[k]), els[k]));
    }

    PlanResiduals& r = plan.residuals;
    r.conj_a = max_abs_diff(plan.s * plan.a * plan.s.adjoint(), pauli_pair(Axis::z, Axis::identity));
    r.conj_b = max_abs_diff(plan.s * plan.b * plan.s.adjoint(), pauli_pair(Axis::identity, Axis::z));
    r.unitarity = unitarity_defect(plan.s);
    r.cs_reassembly = max_abs_diff(reassemble(plan.cs), plan.s);
    r.network = max_abs_diff(plan.network, plan.s);
    double worst_route = 1.0;
    for (std::size_t j = 0; j < 4; ++j)
        worst_route = std::min(worst_route, port_probabilities(plan.network, plan.eigenstates[j])[j]);
    r.routing = 1.0 - worst_route;

    if (r.worst() > Tolerances::synthesis_residual) {
        std::ostringstream msg;
        msg << "synthesize: residual " << r.worst() << " above tolerance";
        throw SynthesisError(msg.str());
    }
    return plan;
}

/// sum_j lambda_j P_j: the observable's mean estimated from port counts.
inline double port_expectation(const GatePlan& plan, const StateVec& psi) {
    const auto p = port_probabilities(plan.network, psi);
    double sum = 0.0;
    for (std::size_t j = 0; j < 4; ++j) sum += plan.eigenvalues[j] * p[j];
    return sum;
}

}  // namespace rotent
