#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "patankar/mpdec.hpp"
#include "patankar/mprk.hpp"
#include "patankar/problems.hpp"
#include "support.hpp"

using namespace patankar;
using namespace patankar::testing;

TEST_CASE("Gauss-Lobatto nodes") {
    SUBCASE("closed forms for small M") {
        CHECK(gauss_lobatto_nodes(1).nodes == Vec{0.0, 1.0});
        const NodeSet two = gauss_lobatto_nodes(2);
        REQUIRE(two.nodes.size() == 3);
        CHECK(two.nodes[1] == doctest::Approx(0.5).epsilon(1e-14));
        const NodeSet three = gauss_lobatto_nodes(3);
        REQUIRE(three.nodes.size() == 4);
        CHECK(three.nodes[1] ==
              doctest::Approx((1.0 - 1.0 / std::sqrt(5.0)) / 2.0).epsilon(1e-13));
        CHECK(three.nodes[2] ==
              doctest::Approx((1.0 + 1.0 / std::sqrt(5.0)) / 2.0).epsilon(1e-13));
    }
    SUBCASE("interior symmetry and range up to the cap") {
        for (int m = 1; m <= 14; ++m) {
            const NodeSet ns = gauss_lobatto_nodes(m);
            REQUIRE(ns.nodes.size() == static_cast<std::size_t>(m) + 1);
            CHECK(ns.nodes.front() == 0.0);
            CHECK(ns.nodes.back() == 1.0);
            for (std::size_t i = 0; i <= ns.nodes.size() / 2; ++i)
                CHECK(ns.nodes[i] ==
                      doctest::Approx(1.0 - ns.nodes[ns.nodes.size() - 1 - i]).epsilon(1e-12));
        }
        CHECK_THROWS_AS(static_cast<void>(gauss_lobatto_nodes(15)), Error);
        CHECK_THROWS_AS(static_cast<void>(gauss_lobatto_nodes(0)), Error);
    }
    SUBCASE("final column of theta doubles to the quadrature weights") {
        // Gauss-Lobatto weights on [-1,1] are 2 / (M (M+1) P_M(x)^2); all
        // positive. Spot-check M = 3: endpoint weight 1/6, interior 5/6 on
        // [0,1] after halving.
        const ThetaTable th = theta_table(gauss_lobatto_nodes(3));
        CHECK(2.0 * th.theta(0, 3) == doctest::Approx(2.0 / 12.0).epsilon(1e-12));
        CHECK(2.0 * th.theta(1, 3) == doctest::Approx(10.0 / 12.0).epsilon(1e-12));
        for (int m = 1; m <= 14; ++m) {
            const ThetaTable t = theta_table(gauss_lobatto_nodes(m));
            CHECK(t.final_column_nonnegative());
        }
    }
}

TEST_CASE("theta tables for equispaced nodes") {
    SUBCASE("M = 1") {
        const ThetaTable th = theta_table(equispaced_nodes(1));
        CHECK(th.theta(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(th.theta(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("M = 2 exact rational values") {
        const ThetaTable th = theta_table(equispaced_nodes(2));
        CHECK(th.theta(0, 1) == doctest::Approx(5.0 / 24.0).epsilon(1e-13));
        CHECK(th.theta(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
        CHECK(th.theta(2, 1) == doctest::Approx(-1.0 / 24.0).epsilon(1e-13));
        CHECK(th.theta(0, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
        CHECK(th.theta(1, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
        CHECK(th.theta(2, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    }
    SUBCASE("matches the monomial-basis route at low order") {
        for (int m : {1, 2, 3, 4, 5, 6}) {
            for (const NodeSet& ns : {equispaced_nodes(m), gauss_lobatto_nodes(m)}) {
                const ThetaTable th = theta_table(ns);
                for (int r = 0; r <= m; ++r) {
                    const Polynomial phi = lagrange_basis(ns.nodes, r);
                    for (int col = 1; col <= m; ++col)
                        CHECK(th.theta(r, col) ==
                              doctest::Approx(integrate_polynomial(phi, 0.0, ns.nodes[col]))
                                  .epsilon(1e-13));
                }
            }
        }
    }
    SUBCASE("split tables and row sums") {
        for (int m : {1, 2, 3, 5, 8, 13}) {
            const ThetaTable th = theta_table(equispaced_nodes(m));
            const NodeSet ns = equispaced_nodes(m);
            for (int col = 1; col <= m; ++col) {
                double row_sum = 0.0;
                for (int r = 0; r <= m; ++r) {
                    const double t = th.theta(r, col);
                    row_sum += t;
                    CHECK(th.theta_plus(r, col) >= 0.0);
                    CHECK(th.theta_minus(r, col) <= 0.0);
                    CHECK(th.theta_plus(r, col) + th.theta_minus(r, col) == t);
                }
                CHECK(row_sum == doctest::Approx(ns.nodes[col]).epsilon(1e-12));
            }
        }
    }
    SUBCASE("first negative final-column weight appears at M = 8") {
        // Closed Newton-Cotes weights over 8 nodes are still positive; the
        // 9-node rule is the first with negative weights.
        CHECK(theta_table(equispaced_nodes(7)).final_column_nonnegative());
        CHECK_FALSE(theta_table(equispaced_nodes(8)).final_column_nonnegative());
    }
}

TEST_CASE("configuration rules") {
    const MPDeCConfig e5 = MPDeCConfig::make(5, NodeKind::Equispaced);
    CHECK(e5.subintervals() == 4);
    CHECK(e5.corrections == 5);
    const MPDeCConfig g5 = MPDeCConfig::make(5, NodeKind::GaussLobatto);
    CHECK(g5.subintervals() == 3);
    const MPDeCConfig p1 = MPDeCConfig::make(1, NodeKind::Equispaced);
    CHECK(p1.subintervals() == 1);
    CHECK_THROWS_AS(static_cast<void>(MPDeCConfig::make(0, NodeKind::Equispaced)), Error);
    CHECK_THROWS_AS(static_cast<void>(MPDeCConfig::make(15, NodeKind::Equispaced)), Error);
    CHECK(MPDeCConfig::make(8, NodeKind::Equispaced).conserves_all_invariants());
    CHECK_FALSE(MPDeCConfig::make(9, NodeKind::Equispaced).conserves_all_invariants());
    CHECK(MPDeCConfig::make(14, NodeKind::GaussLobatto).conserves_all_invariants());
}

TEST_CASE("first order equals the Patankar-Euler step") {
    const MPDeCConfig c = MPDeCConfig::make(1, NodeKind::Equispaced);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const LinearPDS pds = random_conservative_pds(rng, 2 + rng() % 5);
        const PDSRates rates = rates_from_matrix(pds);
        const Vec y0 = random_positive_state(rng, pds.dim());
        const double dt = random_dt(rng);
        const Vec a = mpdec_step(c, rates, y0, dt);
        const Vec b = mpe_step(rates, y0, dt);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::abs(a[i] - b[i]) <= 1e-14 * std::abs(b[i]));
    }
}

TEST_CASE("degenerate steps") {
    const TestProblem tb = test_problem(ProblemId::TwoByTwo);
    const PDSRates rates = rates_from_matrix(tb.pds);
    const MPDeCConfig c = MPDeCConfig::make(4, NodeKind::GaussLobatto);
    SUBCASE("dt = 0 returns y_n") {
        const Vec out = mpdec_step(c, rates, tb.y0, 0.0);
        CHECK(out == tb.y0);
    }
    SUBCASE("steady state is preserved") {
        for (const double dt : {0.1, 7.0, 25.0}) {
            const Vec out = mpdec_step(c, rates, tb.steady.value, dt);
            CHECK(std::abs(out[0] - 0.5) <= 1e-12);
            CHECK(std::abs(out[1] - 0.5) <= 1e-12);
        }
    }
}

TEST_CASE("positivity and total-sum conservation for all configurations") {
    std::mt19937_64 rng(99);
    for (int p = 1; p <= 14; ++p) {
        for (const NodeKind kind : {NodeKind::Equispaced, NodeKind::GaussLobatto}) {
            const MPDeCConfig c = MPDeCConfig::make(p, kind);
            const LinearPDS pds = random_conservative_pds(rng, 2 + rng() % 7);
            const PDSRates rates = rates_from_matrix(pds);
            const Vec y0 = random_positive_state(rng, pds.dim());
            const double dt = random_dt(rng);
            const Vec y1 = mpdec_step(c, rates, y0, dt);
            for (double v : y1) CHECK(v > 0.0);
            CHECK(std::abs(sum(y1) - sum(y0)) <= 1e-12 * sum(y0));
        }
    }
}

TEST_CASE("all invariants conserved when the final column is nonnegative") {
    const TestProblem dz = test_problem(ProblemId::DoubleZero4);
    const PDSRates rates = rates_from_matrix(dz.pds);
    const Vec second{1.0, 2.0, 2.0, 1.0};
    auto run = [&](const MPDeCConfig& c) {
        Vec y = dz.y0;
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            y = mpdec_step(c, rates, y, 3.0);
            worst = std::max(worst,
                             std::abs(dot(second, y) - dot(second, dz.y0)) /
                                 std::abs(dot(second, dz.y0)));
        }
        return worst;
    };
    for (int p = 1; p <= 7; ++p)
        CHECK(run(MPDeCConfig::make(p, NodeKind::Equispaced)) <= 1e-11);
    for (int p = 1; p <= 14; ++p)
        CHECK(run(MPDeCConfig::make(p, NodeKind::GaussLobatto)) <= 1e-11);
}

TEST_CASE("large steps on the stiff two-by-two system") {
    const TestProblem tb = test_problem(ProblemId::TwoByTwo);
    const PDSRates rates = rates_from_matrix(tb.pds);

    SUBCASE("Gauss-Lobatto orders converge with dt = 25") {
        for (int p = 4; p <= 14; p += 2) {
            CAPTURE(p);
            const MPDeCConfig c = MPDeCConfig::make(p, NodeKind::GaussLobatto);
            Vec y = tb.y0;
            double prev = std::abs(y[0] - 0.5);
            bool monotone = true;
            for (int k = 0; k < 25; ++k) {
                y = mpdec_step(c, rates, y, 25.0);
                const double d = std::abs(y[0] - 0.5);
                if (prev > 1e-12 && d > prev) monotone = false;
                prev = d;
            }
            CHECK(monotone);
            CHECK(prev <= 1e-11);
        }
    }
    SUBCASE("equispaced order 14 oscillates at dt = 0.2") {
        const MPDeCConfig c = MPDeCConfig::make(14, NodeKind::Equispaced);
        Vec y = tb.y0;
        double final_dist = 0.0;
        for (int k = 0; k < 200; ++k) {
            y = mpdec_step(c, rates, y, 0.2);
            final_dist = std::abs(y[0] - 0.5);
        }
        CHECK(final_dist > 0.05);  // no decay towards the steady state
    }
}

TEST_CASE("one extra sweep gains one order") {
    const TestProblem p = test_problem(ProblemId::Real3);
    const PDSRates rates = rates_from_matrix(p.pds);
    for (const int sweeps : {2, 3}) {
        CAPTURE(sweeps);
        Vec diffs;
        for (const double dt : {4e-5, 2e-5}) {
            const Vec a = mpdec_step(MPDeCConfig::custom(3, sweeps, NodeKind::Equispaced), rates,
                                     p.y0, dt);
            const Vec b = mpdec_step(MPDeCConfig::custom(3, sweeps + 1, NodeKind::Equispaced),
                                     rates, p.y0, dt);
            double d = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
            diffs.push_back(d);
        }
        const double observed = std::log2(diffs[0] / diffs[1]);
        CHECK(observed == doctest::Approx(sweeps + 1).epsilon(0.15));
    }
}

TEST_CASE("correction solve rejects bad previous sweeps") {
    const TestProblem tb = test_problem(ProblemId::TwoByTwo);
    const PDSRates rates = rates_from_matrix(tb.pds);
    const ThetaTable th = theta_table(equispaced_nodes(1));
    const std::vector<Vec> bad = {tb.y0, Vec{1.0, 0.0}};
    CHECK_THROWS_AS(static_cast<void>(mpdec_correction_solve(rates, tb.y0, bad, 1, th, 0.1)),
                    Error);
}
