#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fluxqed/dynamics.hpp"
#include "test_support.hpp"

using namespace fluxqed;
using fluxqed::testing::max_abs_diff;
using fluxqed::testing::random_symmetric;

namespace {

void expect_probabilities_near(const Probabilities& p, const double (&expected)[4], double tol) {
    EXPECT_NEAR(p.p1, expected[0], tol);
    EXPECT_NEAR(p.p2, expected[1], tol);
    EXPECT_NEAR(p.p3, expected[2], tol);
    EXPECT_NEAR(p.p4, expected[3], tol);
}

}  // namespace

TEST(Evolve, TimeZeroReturnsInitialState) {
    const CouplingParams p = CouplingParams::symmetric(0.6, 1.37);
    EXPECT_LE(max_abs_diff(evolve(p, 0.0).amplitudes(), initial_state(p).amplitudes()), 1e-14);
}

TEST(Evolve, DarkStateIsStationaryWithoutAuxCoupling) {
    const CouplingParams p = CouplingParams::symmetric(0.8, 0.0);
    const StateVector d0 = initial_state(p);
    for (double t : {0.5, 7.0, 123.4}) {
        const StateVector d = evolve(p, t);
        EXPECT_NEAR(std::abs(inner_product(d0, d)), 1.0, 1e-12) << t;
    }
}

TEST(Evolve, AgreesWithTaylorOracle) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const CouplingParams p = random_symmetric(rng);
        const double t = trial == 0 ? 0.7 : std::uniform_real_distribution<double>(0, 30)(rng);
        const StateVector expected = apply(propagator_oracle(build_h_full(p), t), initial_state(p));
        EXPECT_LE(max_abs_diff(evolve(p, t).amplitudes(), expected.amplitudes()), 1e-8) << trial;
    }
}

TEST(Amplitudes, InitialProjections) {
    // d0 = N (sqrt2 g chi4+ - chi1+), so P3(0) = 2g^2 / (2g^2 + 1).
    const CouplingParams p = CouplingParams::symmetric(0.25, 1.89);
    const Amplitudes a = amplitudes(initial_state(p));
    const double n = 1.0 / std::sqrt(1.0 + 2 * 0.0625);
    EXPECT_NEAR(a.f1.real(), -n, 1e-15);
    EXPECT_NEAR(a.f3.real(), std::sqrt(2.0) * 0.25 * n, 1e-15);
    EXPECT_EQ(std::abs(a.f2), 0.0);
    EXPECT_EQ(std::abs(a.f4), 0.0);
    const Probabilities prob = probabilities(a);
    EXPECT_NEAR(prob.p3, 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(prob.p1, 8.0 / 9.0, 1e-15);
}

TEST(Amplitudes, FrozenProbabilitiesAtUnitCoupling) {
    const CouplingParams p = CouplingParams::symmetric(1, 1);
    const double at2[] = {0.019824357735175, 0.22301004953187284, 0.24628378478447047, 0.5108818079484817};
    const double at1[] = {0.12431738676735161, 0.012359754371549245, 0.618929109238341, 0.24439374962275848};
    expect_probabilities_near(probabilities(amplitudes(evolve(p, 2.0))), at2, 1e-12);
    expect_probabilities_near(probabilities(amplitudes(evolve(p, 1.0))), at1, 1e-12);
    expect_probabilities_near(SectorEvolution(p).probabilities_at(2.0), at2, 1e-12);
}

TEST(Amplitudes, RejectsWrongDimension) {
    EXPECT_THROW(amplitudes(dark_state(CouplingParams::symmetric(1, 1))), ValidationError);
    EXPECT_THROW(antisymmetric_population(dark_state(CouplingParams::symmetric(1, 1))), ValidationError);
}

TEST(Trace, StationaryWithoutAuxCoupling) {
    const double g = 0.7;
    const EvolutionTrace tr = trace(CouplingParams::symmetric(g, 0.0), 50.0, 101);
    ASSERT_EQ(tr.times.size(), 101u);
    EXPECT_EQ(tr.times.front(), 0.0);
    EXPECT_EQ(tr.times.back(), 50.0);
    const double p3 = 2 * g * g / (2 * g * g + 1);
    for (const auto& row : tr.rows) {
        EXPECT_NEAR(row.p3, p3, 1e-12);
        EXPECT_NEAR(row.p1, 1 - p3, 1e-12);
        EXPECT_NEAR(row.p2, 0.0, 1e-12);
        EXPECT_NEAR(row.p4, 0.0, 1e-12);
    }
}

TEST(Trace, FrozenMaximumAndNormalization) {
    const EvolutionTrace tr = trace(CouplingParams::symmetric(0.25, 1.89), 50.0, 4001);
    std::size_t best = 0;
    for (std::size_t k = 0; k < tr.rows.size(); ++k) {
        EXPECT_NEAR(tr.rows[k].sum(), 1.0, 1e-12);
        if (tr.rows[k].p3 > tr.rows[best].p3) best = k;
    }
    EXPECT_NEAR(tr.rows[best].p3, 0.3151820714100046, 1e-12);
    EXPECT_NEAR(tr.times[best], 3.2375, 1e-12);

    const EvolutionTrace full = trace(CouplingParams::symmetric(0.25, 1.89));
    double max_p3 = 0;
    for (const auto& row : full.rows) max_p3 = std::max(max_p3, row.p3);
    EXPECT_NEAR(max_p3, 0.3150410041386574, 1e-12);
}

TEST(Trace, RejectsInvalidGrids) {
    const CouplingParams p = CouplingParams::symmetric(1, 1);
    EXPECT_THROW(trace(p, 0.0, 10), ValidationError);
    EXPECT_THROW(trace(p, -1.0, 10), ValidationError);
    EXPECT_THROW(trace(p, std::nan(""), 10), ValidationError);
    EXPECT_THROW(trace(p, 10.0, 1), ValidationError);
}

TEST(Evolution, StaysInSymmetricSector) {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        const CouplingParams p = random_symmetric(rng);
        const Evolution ev(p);
        for (double t : {0.3, 4.0, 77.0, 199.0}) {
            const StateVector s = ev.state_at(t);
            EXPECT_LE(antisymmetric_population(s), 1e-13);
            EXPECT_NEAR(probabilities(amplitudes(s)).sum(), 1.0, 1e-12);
        }
    }
}

TEST(Evolution, TimeReversalConjugatesRealInitialState) {
    const Evolution ev(CouplingParams::symmetric(0.6, 1.37));
    for (double t : {0.9, 16.1}) {
        const Eigen::VectorXcd forward = ev.state_at(t).amplitudes();
        const Eigen::VectorXcd backward = ev.state_at(-t).amplitudes();
        EXPECT_LE(max_abs_diff(backward, forward.conjugate()), 1e-12);
    }
}

TEST(Evolution, TwoStepPropagationMatchesSingleStep) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    for (int trial = 0; trial < 20; ++trial) {
        const CouplingParams p = random_symmetric(rng);
        const Evolution ev(p);
        const double t1 = time(rng), t2 = time(rng);
        const StateVector two_step = apply(propagator(ev.eigensystem(), t2), ev.state_at(t1));
        EXPECT_LE(max_abs_diff(two_step.amplitudes(), ev.state_at(t1 + t2).amplitudes()), 1e-10) << trial;
    }
}

TEST(SectorEvolution, MatchesFullEvolution) {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> time(0.0, 200.0);
    for (int trial = 0; trial < 30; ++trial) {
        const CouplingParams p = random_symmetric(rng);
        const SectorEvolution sector(p);
        const Evolution full(p);
        const double t = time(rng);
        const Amplitudes a = sector.amplitudes_at(t);
        const Amplitudes b = amplitudes(full.state_at(t));
        EXPECT_LE(std::abs(a.f1 - b.f1), 1e-10);
        EXPECT_LE(std::abs(a.f2 - b.f2), 1e-10);
        EXPECT_LE(std::abs(a.f3 - b.f3), 1e-10);
        EXPECT_LE(std::abs(a.f4 - b.f4), 1e-10);
        EXPECT_NEAR(sector.max_frequency(), analytic_eigenvalues(p)[5], 1e-12);
    }
}

TEST(Evolution, ErrorPaths) {
    EXPECT_THROW(Evolution({0.5, 0.6, 1, 1, 1}), ValidationError);
    EXPECT_THROW(SectorEvolution({0.5, 0.5, 1, 2, 1}), ValidationError);
    EXPECT_THROW(evolve(CouplingParams::symmetric(1, 1), -1.0), ValidationError);
    EXPECT_THROW(evolve(CouplingParams::symmetric(1, 1), std::nan("")), ValidationError);
    EXPECT_THROW(evolve(CouplingParams::symmetric(-1, 1), 1.0), ValidationError);
}
