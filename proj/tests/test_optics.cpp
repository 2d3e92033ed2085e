#include <gtest/gtest.h>

#include <numbers>

#include "rotent/optics.hpp"
#include "test_util.hpp"

using namespace rotent;

namespace {

const double pi = std::numbers::pi;
const cplx i1{0.0, 1.0};

}  // namespace

TEST(Waveplates, UnitaryForAnyAngle) {
    testkit::Random rng(20);
    for (int k = 0; k < 200; ++k) {
        const double t = rng.uniform(-2 * pi, 2 * pi);
        EXPECT_LT(unitarity_defect(qwp(t)), 1e-12);
        EXPECT_LT(unitarity_defect(hwp(t)), 1e-12);
        EXPECT_LT(unitarity_defect(phase_shifter(t)), 1e-12);
    }
}

TEST(Waveplates, DisplayedEntries) {
    const double k = 1 / std::numbers::sqrt2;
    EXPECT_LT(max_abs_diff(qwp(0.0), Op2{k * (1.0 - i1), 0.0, 0.0, k * (1.0 + i1)}), 1e-15);
    EXPECT_LT(max_abs_diff(hwp(0.0), Op2{-i1, 0.0, 0.0, i1}), 1e-15);
    EXPECT_LT(max_abs_diff(hwp(pi / 4), Op2{0.0, -i1, -i1, 0.0}), 1e-15);
}

TEST(Waveplates, QuarterWaveAt45MatchesItsDedicatedForm) {
    // e^{-i pi/4} / 2 [[1+i, 1-i], [1-i, 1+i]]
    const Op2 shown = Op2{1.0 + i1, 1.0 - i1, 1.0 - i1, 1.0 + i1} * (expi(-pi / 4) * 0.5);
    EXPECT_LT(max_abs_diff(qwp(pi / 4), shown), 1e-15);
}

TEST(Waveplates, TwoQuartersMakeAHalfUpToPhase) {
    testkit::Random rng(21);
    for (int k = 0; k < 20; ++k) {
        const double t = rng.uniform(-pi, pi);
        EXPECT_LT(phase_insensitive_distance(qwp(t) * qwp(t), hwp(t)), 1e-14);
    }
}

TEST(Waveplates, HalfWavePeriodicity) {
    EXPECT_LT(max_abs_diff(hwp(0.3 + pi / 2), -hwp(0.3)), 1e-15);
    EXPECT_LT(max_abs_diff(qwp(0.3 + pi), qwp(0.3)), 1e-15);
}

TEST(Pbs, Pbs45MatchesDisplayedMatrix) {
    const Op4 shown = Op4{1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, 1} * 0.5;
    EXPECT_LT(max_abs_diff(pbs_45(), shown), 1e-15);
}

TEST(Pbs, StandardRoutesPolarizations) {
    const Op4 u = pbs_standard();
    EXPECT_EQ(u * StateVec::basis(Mode::aH).amplitudes(), StateVec::basis(Mode::aH).amplitudes());
    EXPECT_EQ(u * StateVec::basis(Mode::aV).amplitudes(), StateVec::basis(Mode::bV).amplitudes());
    EXPECT_EQ(u * StateVec::basis(Mode::bV).amplitudes(), StateVec::basis(Mode::aV).amplitudes());
}

TEST(Pbs, SelfInverseAndUnitary) {
    for (const Op4& u : {pbs_45(), pbs_standard()}) {
        EXPECT_LT(unitarity_defect(u), 1e-12);
        EXPECT_LT(max_abs_diff(u * u, Op4::identity()), 1e-15);
    }
}

TEST(Pauli, Algebra) {
    const Op2 x = pauli2(Axis::x), y = pauli2(Axis::y), z = pauli2(Axis::z);
    EXPECT_LT(max_abs_diff(x * y, z * i1), 1e-15);
    EXPECT_LT(max_abs_diff(y * z, x * i1), 1e-15);
    EXPECT_LT(max_abs_diff(z * x, y * i1), 1e-15);
    EXPECT_EQ(pauli({Axis::z, Subsystem::path}), pauli_pair(Axis::z, Axis::identity));
    EXPECT_EQ(pauli({Axis::x, Subsystem::polarization}), pauli_pair(Axis::identity, Axis::x));
}

TEST(Witness, DoubleLoopW1MatchesDisplayedMatrix) {
    const Op4 shown =
        Op4{1, 1, -i1, -i1, 1, 1, i1, i1, i1, -i1, 1, -1, i1, -i1, -1, 1} * 0.25;
    EXPECT_LT(max_abs_diff(witness({Scheme::double_loop, 1}), shown), 1e-15);
}

TEST(Witness, DoubleLoopW1IsPartialTransposeOfProjector) {
    const StateVec phi_m(0.5 * i1, 0.5 * i1, -0.5, 0.5);
    EXPECT_LT(max_abs_diff(witness({Scheme::double_loop, 1}), partial_transpose_pol(outer(phi_m, phi_m))), 1e-12);
}

TEST(Witness, AllHermitianWithUnitTraceAndOneNegativeDirection) {
    for (Scheme s : {Scheme::double_loop, Scheme::single_loop})
        for (int idx : {1, 2}) {
            const Op4 w = witness({s, idx});
            EXPECT_LT(hermiticity_defect(w), 1e-12);
            EXPECT_NEAR(std::abs(w.trace() - 1.0), 0.0, 1e-15);
            const auto vals = eigenvalues(w);
            EXPECT_NEAR(vals[0], -0.5, 1e-12);  // partial transpose of a Bell projector
            EXPECT_NEAR(vals[1], 0.5, 1e-12);
            // The partial transpose of a witness built this way is a rank-1 projector.
            const auto pt = eigenvalues(partial_transpose_pol(w));
            EXPECT_NEAR(pt[3], 1.0, 1e-12);
            EXPECT_NEAR(pt[2], 0.0, 1e-12);
        }
}

TEST(Witness, NonNegativeOnProductStates) {
    testkit::Random rng(22);
    for (int k = 0; k < 300; ++k) {
        const StateVec s = StateVec::product(normalized(rng.vector<2>()), normalized(rng.vector<2>()));
        for (Scheme sch : {Scheme::double_loop, Scheme::single_loop})
            for (int idx : {1, 2}) EXPECT_GE(expectation(witness({sch, idx}), s), -1e-13);
    }
}

TEST(Witness, TermsAndInvalidIndex) {
    const auto t = witness_terms({Scheme::single_loop, 1});
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].coefficient, -1.0);
    EXPECT_EQ(t[0].path, Axis::x);
    EXPECT_EQ(t[0].pol, Axis::x);
    EXPECT_THROW(witness_terms({Scheme::double_loop, 3}), ValidationError);
    EXPECT_THROW(witness({Scheme::single_loop, 0}), ValidationError);
}
