#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "model.hpp"
#include "oracles.hpp"

using swing::State;
using swing::SwingSystem;
using swing::WeightedGraph;

TEST_CASE("system constructor validates parameter vectors") {
    const WeightedGraph g = WeightedGraph::complete(2, 0.2);
    CHECK_THROWS_AS(SwingSystem({0.0, 0.1}, {0.3, 0.3}, {0.0, 0.0}, g),
                    std::invalid_argument);
    CHECK_THROWS_AS(SwingSystem({0.1, 0.1}, {0.3, -0.3}, {0.0, 0.0}, g),
                    std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(SwingSystem({0.1, 0.1}, {0.3, 0.3}, {nan, 0.0}, g),
                    std::invalid_argument);
    CHECK_THROWS_AS(SwingSystem({0.1, 0.1, 0.1}, {0.3, 0.3}, {0.0, 0.0}, g),
                    std::invalid_argument);
    CHECK_THROWS_AS(SwingSystem({0.1, 0.1}, {0.3}, {0.0, 0.0}, g),
                    std::invalid_argument);
}

TEST_CASE("uniform inertia and damping give lambda = 0") {
    const SwingSystem s = oracles::uniform_pair(0.12, 0.35, 0.2);
    const swing::ParamSummary p = swing::param_summary(s);
    CHECK(p.lambda == 0.0);
    CHECK(p.a_u == 0.2);
    CHECK(p.a_l == 0.2);
    CHECK(p.d_u == 0.35);
    CHECK(p.d_l == 0.35);
    CHECK(p.m_u == 0.12);
    CHECK(p.m_l == 0.12);
}

TEST_CASE("lambda for a 2-node spread in damping only") {
    const SwingSystem s({0.1, 0.1}, {0.3, 0.4}, {0.0, 0.0},
                        WeightedGraph::complete(2, 0.2));
    const swing::ParamSummary p = swing::param_summary(s);
    CHECK(p.d_hat[0] == doctest::Approx(-0.05).epsilon(1e-14));
    CHECK(p.d_hat[1] == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(p.m_hat[0] == 0.0);
    CHECK(p.m_hat[1] == 0.0);
    CHECK(p.lambda ==
          doctest::Approx(std::sqrt(0.005) / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("fluctuation vectors are zero-sum and lambda matches its formula") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const SwingSystem s(oracles::random_vector(rng, n, 0.05, 0.5),
                            oracles::random_vector(rng, n, 0.1, 1.0),
                            oracles::random_vector(rng, n, -1.0, 1.0),
                            oracles::random_connected_graph(rng, n, 0.4, 0.2, 1.0));
        const swing::ParamSummary p = swing::param_summary(s);
        double dsum = 0.0, msum = 0.0, d2 = 0.0, m2 = 0.0;
        for (int i = 0; i < n; ++i) {
            dsum += p.d_hat[i];
            msum += p.m_hat[i];
            d2 += p.d_hat[i] * p.d_hat[i];
            m2 += p.m_hat[i] * p.m_hat[i];
        }
        CHECK(std::abs(dsum) < 1e-12);
        CHECK(std::abs(msum) < 1e-12);
        const double lam =
            std::sqrt(d2) / std::sqrt(n) + 2.0 * std::sqrt(m2) / std::sqrt(n);
        CHECK(p.lambda == doctest::Approx(lam).epsilon(1e-13));
        CHECK(p.lambda >= 0.0);
        CHECK(p.a_l <= p.a_u);
        CHECK(p.d_l <= p.d_u);
        CHECK(p.m_l <= p.m_u);
        CHECK(p.a_l > 0.0);
    }
}

TEST_CASE("extremal couplings ignore zero entries") {
    // Path 0-1-2 with distinct weights; the (0,2) zero must not become a_l.
    std::vector<double> w = {0.0, 0.6, 0.0,  //
                             0.6, 0.0, 0.9,  //
                             0.0, 0.9, 0.0};
    const SwingSystem s({0.1, 0.1, 0.1}, {0.3, 0.3, 0.3}, {0.0, 0.0, 0.0},
                        WeightedGraph(3, w));
    const swing::ParamSummary p = swing::param_summary(s);
    CHECK(p.a_l == 0.6);
    CHECK(p.a_u == 0.9);
}

TEST_CASE("edgeless graph cannot be summarized") {
    const SwingSystem s({0.1, 0.1}, {0.3, 0.3}, {0.0, 0.0},
                        WeightedGraph(2, {0.0, 0.0, 0.0, 0.0}));
    CHECK_THROWS_AS(swing::param_summary(s), swing::DomainError);
    CHECK_THROWS_WITH(swing::param_summary(s), "no edges");
}

TEST_CASE("macro-micro reduction: worked examples") {
    SUBCASE("already zero-sum") {
        const SwingSystem s({0.1, 0.1}, {1.0, 1.0}, {1.0, -1.0},
                            WeightedGraph::complete(2, 0.2));
        const swing::MacroMicro mm = swing::macro_micro(s);
        CHECK(mm.omega_c == 0.0);
        CHECK(mm.system.omega_nat()[0] == doctest::Approx(1.0));
        CHECK(mm.system.omega_nat()[1] == doctest::Approx(-1.0));
    }
    SUBCASE("uneven damping absorbs the drift") {
        const SwingSystem s({0.1, 0.1}, {1.0, 3.0}, {2.0, 2.0},
                            WeightedGraph::complete(2, 0.2));
        const swing::MacroMicro mm = swing::macro_micro(s);
        CHECK(mm.omega_c == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(mm.system.omega_nat()[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(mm.system.omega_nat()[1] == doctest::Approx(-1.0).epsilon(1e-14));
    }
}

TEST_CASE("reduced natural frequencies are zero-sum; reduction is idempotent") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const SwingSystem s(oracles::random_vector(rng, n, 0.05, 0.5),
                            oracles::random_vector(rng, n, 0.1, 1.0),
                            oracles::random_vector(rng, n, -2.0, 2.0),
                            oracles::random_connected_graph(rng, n, 0.4, 0.2, 1.0));
        const swing::MacroMicro mm = swing::macro_micro(s);
        double sum = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += mm.system.omega_nat()[i];
            scale += s.omega_nat()[i] * s.omega_nat()[i];
        }
        CHECK(std::abs(sum) <= 1e-12 * (1.0 + std::sqrt(scale)));

        const swing::MacroMicro again = swing::macro_micro(mm.system);
        CHECK(std::abs(again.omega_c) <= 1e-12);
        for (int i = 0; i < n; ++i)
            CHECK(again.system.omega_nat()[i] ==
                  doctest::Approx(mm.system.omega_nat()[i]).epsilon(1e-12));
    }
}

TEST_CASE("weighted sums: worked examples") {
    const SwingSystem s({0.2, 0.5}, {0.3, 0.4}, {0.0, 0.0},
                        WeightedGraph::complete(2, 0.2));
    SUBCASE("zero state") {
        const swing::WeightedSums ws =
            swing::weighted_sums(s, State{{0.0, 0.0}, {0.0, 0.0}});
        CHECK(ws.theta_c == 0.0);
        CHECK(ws.theta_s == 0.0);
        CHECK(ws.omega_s == 0.0);
        CHECK(ws.omega_c == 0.0);
    }
    SUBCASE("damping-weighted phase sum") {
        const swing::WeightedSums ws =
            swing::weighted_sums(s, State{{1.0, 2.0}, {0.5, -0.5}});
        CHECK(ws.theta_s == doctest::Approx(1.1).epsilon(1e-15));
        CHECK(ws.theta_c == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(ws.omega_s == doctest::Approx(0.2 * 0.5 - 0.5 * 0.5).epsilon(1e-15));
        CHECK(ws.omega_c == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("uniform unit damping makes theta_s = n * theta_c") {
        const SwingSystem u({0.2, 0.5}, {1.0, 1.0}, {0.0, 0.0},
                            WeightedGraph::complete(2, 0.2));
        const swing::WeightedSums ws =
            swing::weighted_sums(u, State{{0.7, -0.2}, {0.0, 0.0}});
        CHECK(ws.theta_s == doctest::Approx(2.0 * ws.theta_c).epsilon(1e-15));
    }
}

TEST_CASE("state validation") {
    const SwingSystem s = oracles::uniform_pair(0.1, 0.3, 0.2);
    CHECK_NOTHROW(swing::validate_state(s, State{{0.0, 1.0}, {2.0, 3.0}}));
    CHECK_THROWS_AS(swing::validate_state(s, State{{0.0}, {0.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(swing::validate_state(s, State{{0.0, 0.0}, {0.0}}),
                    std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(swing::validate_state(s, State{{0.0, inf}, {0.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("micro system reproduces the original's phase differences") {
    // Matched initial data: same phases, frequencies shifted by the drift.
    const SwingSystem s({0.11, 0.13}, {0.32, 0.38}, {0.4, 0.1},
                        WeightedGraph::complete(2, 0.2));
    const swing::MacroMicro mm = swing::macro_micro(s);

    const State x0{{0.9, -0.4}, {0.3, -0.2}};
    State x0_micro = x0;
    for (double& w : x0_micro.omega) w -= mm.omega_c;

    swing::IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 20.0;
    const swing::Trajectory a = swing::integrate(s, x0, opt);
    const swing::Trajectory b = swing::integrate(mm.system, x0_micro, opt);

    REQUIRE(a.samples() == b.samples());
    for (std::size_t k = 0; k < a.samples(); k += 500) {
        const double ga = a.theta_at(k)[0] - a.theta_at(k)[1];
        const double gb = b.theta_at(k)[0] - b.theta_at(k)[1];
        CHECK(ga == doctest::Approx(gb).epsilon(1e-9));
    }
    const std::size_t last = a.samples() - 1;
    CHECK(a.theta_at(last)[0] - a.theta_at(last)[1] ==
          doctest::Approx(b.theta_at(last)[0] - b.theta_at(last)[1])
              .epsilon(1e-9));
}
