#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fluxqed/optimize.hpp"

using namespace fluxqed;

TEST(FindT0, NoAuxCouplingIsInfeasibleBelowDarkPhotonWeight) {
    const double g = 1.0;  // P1 stays at 1 / (2g^2 + 1) = 1/3
    const CouplingParams p = CouplingParams::symmetric(g, 0.0);
    const OptimizeResult r = find_t0(p, 0.3, 50.0);
    EXPECT_FALSE(r.feasible);
    EXPECT_NEAR(r.p1p2, 1.0 / 3.0, 1e-12);
    EXPECT_TRUE(std::isinf(r.pi_over_gprime));
    EXPECT_TRUE(std::isinf(r.pi_over_2gprime));
}

TEST(FindT0, ConstantPopulationsBreakTiesToEarliestTime) {
    const CouplingParams p = CouplingParams::symmetric(1.0, 0.0);
    const FeasibilityScan scan(p, 50.0);
    const OptimizeResult r = scan.best(0.5);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(r.p3, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.t0, scan.step(), 1e-15);
}

TEST(FindT0, CertifiedTriple) {
    const OptimizeResult r = find_t0(CouplingParams::symmetric(0.6, 1.37), 1e-6);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(r.t0, 16.1007175, 1e-6);
    EXPECT_NEAR(r.p3, 0.8971392927, 1e-9);
    EXPECT_LE(r.p1p2, 1e-6);
    EXPECT_NEAR(r.pi_over_gprime, std::numbers::pi / 1.37, 1e-15);
    EXPECT_NEAR(r.pi_over_2gprime, std::numbers::pi / 2.74, 1e-15);
}

TEST(FindT0, WeakCavityTripleMissesMicroThresholdByFactorTen) {
    const CouplingParams p = CouplingParams::symmetric(0.25, 1.89);
    const FeasibilityScan scan(p, kDefaultSearchTMax);
    const OptimizeResult tight = scan.best(1e-6);
    EXPECT_FALSE(tight.feasible);
    EXPECT_NEAR(tight.p1p2, 9.995e-6, 5e-9);
    EXPECT_NEAR(tight.t0, 132.377, 1e-3);
    const OptimizeResult loose = scan.best(1e-5);
    EXPECT_TRUE(loose.feasible);
    EXPECT_LE(loose.p1p2, 1e-5);
}

TEST(FindT0, StrongCavityTripleHasLargeResidualFloor) {
    const OptimizeResult r = find_t0(CouplingParams::symmetric(2.95, 1.10), 1e-6);
    EXPECT_FALSE(r.feasible);
    EXPECT_NEAR(r.p1p2, 0.04228, 5e-5);
}

TEST(FindT0, ReportedValuesReproduceOnReevaluation) {
    for (const CouplingParams& p : reference_pairs()) {
        const OptimizeResult r = find_t0(p, 1e-3);
        const Probabilities pr = SectorEvolution(p).probabilities_at(r.t0);
        EXPECT_NEAR(r.p1p2, pr.p1 + pr.p2, 1e-10);
        EXPECT_NEAR(r.p3, pr.p3, 1e-10);
        EXPECT_NEAR(r.p1p2 + r.p3 + r.p4, 1.0, 1e-12);
        EXPECT_GT(r.t0, 0.0);
        EXPECT_LE(r.t0, kDefaultSearchTMax);
        if (r.feasible) EXPECT_LE(r.p1p2, 1e-3);
    }
}

TEST(FindT0, Deterministic) {
    const CouplingParams p = CouplingParams::symmetric(0.6, 1.37);
    EXPECT_EQ(find_t0(p, 1e-4), find_t0(p, 1e-4));
}

TEST(FindT0, HalvingScanStepDoesNotMoveOptimum) {
    const CouplingParams p = CouplingParams::symmetric(0.6, 1.37);
    const OptimizeResult coarse = find_t0(p, 1e-6);
    const OptimizeResult fine = find_t0(p, 1e-6, kDefaultSearchTMax, {0.5});
    ASSERT_TRUE(fine.feasible);
    EXPECT_LE(std::abs(fine.p3 - coarse.p3), 1e-6);
    EXPECT_NEAR(fine.t0, coarse.t0, 1e-6);
}

TEST(FindT0, Validation) {
    const CouplingParams p = CouplingParams::symmetric(1, 1);
    EXPECT_THROW(find_t0(p, 0.0), ValidationError);
    EXPECT_THROW(find_t0(p, 1.0), ValidationError);
    EXPECT_THROW(find_t0(p, std::nan("")), ValidationError);
    EXPECT_THROW(find_t0(p, 1e-3, -1.0), ValidationError);
    EXPECT_THROW(find_t0(p, 1e-3, 10.0, {0.0}), ValidationError);
    EXPECT_THROW(find_t0({0.5, 0.6, 1, 1, 1}, 1e-3), ValidationError);
}

TEST(Linspace, Endpoints) {
    const auto axis = linspace(0.05, 3.0, 60);
    ASSERT_EQ(axis.size(), 60u);
    EXPECT_EQ(axis.front(), 0.05);
    EXPECT_EQ(axis.back(), 3.0);
    EXPECT_NEAR(axis[1] - axis[0], 0.05, 1e-15);
    EXPECT_EQ(linspace(1.0, 1.0, 1), std::vector<double>{1.0});
    EXPECT_THROW(linspace(1.0, 2.0, 1), ValidationError);
    EXPECT_THROW(linspace(0.0, 2.0, 3), ValidationError);
    EXPECT_THROW(linspace(2.0, 1.0, 3), ValidationError);
    EXPECT_THROW(linspace(1.0, 2.0, 0), ValidationError);
}

TEST(Sweep, SingleCellEqualsFindT0) {
    const auto grids = sweep({0.6}, {1.37}, {6, 3});
    ASSERT_EQ(grids.size(), 2u);
    EXPECT_EQ(grids[0].threshold_exponent, 6);
    EXPECT_EQ(grids[0].cell(0, 0), find_t0(CouplingParams::symmetric(0.6, 1.37), 1e-6));
    EXPECT_EQ(grids[1].cell(0, 0), find_t0(CouplingParams::symmetric(0.6, 1.37), 1e-3));
}

TEST(Sweep, FeasibleSetsNestAcrossExponents) {
    const auto g = linspace(0.2, 2.0, 6);
    const auto gp = linspace(0.5, 2.5, 5);
    std::vector<int> exps{1, 2, 3, 4, 5, 6};
    const auto grids = sweep(g, gp, exps, {kDefaultSearchTMax, {}, 2, {}});
    for (std::size_t k = 1; k < grids.size(); ++k) {
        EXPECT_LE(grids[k].feasible_count(), grids[k - 1].feasible_count());
        for (std::size_t c = 0; c < grids[k].cells.size(); ++c) {
            const OptimizeResult& tight = grids[k].cells[c];
            const OptimizeResult& loose = grids[k - 1].cells[c];
            if (!tight.feasible) continue;
            EXPECT_TRUE(loose.feasible);
            EXPECT_GE(loose.p3, tight.p3 - 1e-9);
        }
    }
    EXPECT_GT(grids.front().feasible_count(), 0u);
}

TEST(Sweep, WorkerCountDoesNotChangeResults) {
    const auto g = linspace(0.3, 1.5, 4);
    const auto gp = linspace(0.5, 2.0, 4);
    std::size_t calls = 0;
    SweepOptions one{60.0, {}, 1, [&](std::size_t done, std::size_t total) {
                         ++calls;
                         EXPECT_LE(done, total);
                     }};
    const auto a = sweep(g, gp, {2, 4}, one);
    EXPECT_EQ(calls, 16u);
    const auto b = sweep(g, gp, {2, 4}, {60.0, {}, 4, {}});
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].cells, b[k].cells);
    // Row-major layout.
    EXPECT_EQ(a[0].cell(2, 1).params, CouplingParams::symmetric(g[2], gp[1]));
}

TEST(Sweep, Validation) {
    EXPECT_THROW(sweep({}, {1.0}, {1}), ValidationError);
    EXPECT_THROW(sweep({1.0}, {1.0}, {}), ValidationError);
    EXPECT_THROW(sweep({1.0}, {1.0}, {0}), ValidationError);
    EXPECT_THROW(sweep({1.0}, {1.0}, {16}), ValidationError);
    EXPECT_THROW(sweep({1.0, 0.5}, {1.0}, {1}), ValidationError);
    EXPECT_THROW(sweep({-1.0}, {1.0}, {1}), ValidationError);
}

TEST(Fig4, AnnotationsAreConsistent) {
    const auto triples = reference_pairs();
    const auto panels = emit_fig4_traces({triples.begin(), triples.end()}, 40.0, 801, 1e-6);
    ASSERT_EQ(panels.size(), 3u);
    for (const auto& panel : panels) {
        const auto& a = panel.annotation;
        EXPECT_EQ(panel.trace.rows.size(), 801u);
        EXPECT_NEAR(a.distance_pi_over_gprime, std::abs(a.result.t0 - a.result.pi_over_gprime), 0.0);
        EXPECT_NEAR(a.distance_pi_over_2gprime, std::abs(a.result.t0 - a.result.pi_over_2gprime), 0.0);
        EXPECT_GE(a.nearest_peak_p3, 0.0);
    }
    // Only the third pair is certifiable at 1e-6 within t <= 40.
    EXPECT_FALSE(panels[0].annotation.result.feasible);
    EXPECT_FALSE(panels[1].annotation.result.feasible);
    EXPECT_TRUE(panels[2].annotation.result.feasible);
    EXPECT_NEAR(panels[2].annotation.result.t0, 16.1007175, 1e-6);
}
