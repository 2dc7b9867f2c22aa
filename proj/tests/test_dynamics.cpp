#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "model.hpp"
#include "oracles.hpp"
#include "system_io.hpp"

using swing::IntegrateOptions;
using swing::State;
using swing::SwingSystem;
using swing::Trajectory;
using swing::WeightedGraph;

namespace {

// Scalar RK4 for the two-oscillator difference equation
//   m x'' + d x' = dOmega - 2 a sin(x),
// written independently of the production stepper.
struct PendulumRk4 {
    double m, d, a, dom;
    double x, v;

    void slopes(double xx, double vv, double& kx, double& kv) const {
        kx = vv;
        kv = (-d * vv + dom - 2.0 * a * std::sin(xx)) / m;
    }
    void step(double dt) {
        double k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v;
        slopes(x, v, k1x, k1v);
        slopes(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, k2x, k2v);
        slopes(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, k3x, k3v);
        slopes(x + dt * k3x, v + dt * k3v, k4x, k4v);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
};

}  // namespace

TEST_CASE("phase-locked rest state stays put") {
    const SwingSystem s = oracles::uniform_pair(0.1, 0.35, 0.2);
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 5.0;
    const Trajectory tr =
        swing::integrate(s, State{{0.7, 0.7}, {0.0, 0.0}}, opt);
    REQUIRE(tr.samples() == 5001);
    for (std::size_t k = 0; k < tr.samples(); k += 111) {
        CHECK(tr.theta_at(k)[0] == doctest::Approx(0.7).epsilon(1e-13));
        CHECK(tr.theta_at(k)[1] == doctest::Approx(0.7).epsilon(1e-13));
        CHECK(std::abs(tr.omega_at(k)[0]) < 1e-13);
        CHECK(std::abs(tr.omega_at(k)[1]) < 1e-13);
    }
    CHECK(tr.diam.back() < 1e-13);
    CHECK(tr.spread.back() < 1e-13);
}

TEST_CASE("vector field: acceleration balances damping, power, and coupling") {
    std::mt19937 rng(500);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const SwingSystem s(oracles::random_vector(rng, n, 0.05, 0.5),
                            oracles::random_vector(rng, n, 0.1, 1.0),
                            oracles::random_vector(rng, n, -1.0, 1.0),
                            oracles::random_connected_graph(rng, n, 0.4, 0.2, 1.0));
        const State x{oracles::random_vector(rng, n, -3.0, 3.0),
                      oracles::random_vector(rng, n, -3.0, 3.0)};
        const auto [dth, dom] = swing::rhs(s, x);
        const std::vector<double> force = swing::grad_potential(s, x.theta);
        for (int i = 0; i < n; ++i) {
            CHECK(dth[i] == x.omega[i]);
            CHECK(s.m()[i] * dom[i] + s.d()[i] * x.omega[i] ==
                  doctest::Approx(force[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("two-oscillator gap follows the damped pendulum equation") {
    const double m = 0.12, d = 0.33, a = 0.2;
    const SwingSystem s({m, m}, {d, d}, {0.05, -0.05},
                        WeightedGraph::complete(2, a));
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 30.0;
    const State x0{{1.4, -0.6}, {0.2, -0.1}};
    const Trajectory tr = swing::integrate(s, x0, opt);

    PendulumRk4 pend{m, d, a, 0.1, x0.theta[0] - x0.theta[1],
                     x0.omega[0] - x0.omega[1]};
    for (std::size_t k = 1; k < tr.samples(); ++k) {
        pend.step(opt.dt);
        if (k % 1000 == 0 || k + 1 == tr.samples()) {
            const double gap = tr.theta_at(k)[0] - tr.theta_at(k)[1];
            CHECK(gap == doctest::Approx(pend.x).epsilon(1e-9));
            const double vgap = tr.omega_at(k)[0] - tr.omega_at(k)[1];
            CHECK(vgap == doctest::Approx(pend.v).epsilon(1e-9));
        }
    }
}

TEST_CASE("coarse step agrees with a tenfold-refined reference") {
    const SwingSystem s({0.11, 0.14}, {0.31, 0.39}, {0.02, -0.02},
                        WeightedGraph::complete(2, 0.2));
    const State x0{{2.0, -1.0}, {0.5, 0.3}};
    IntegrateOptions coarse;
    coarse.dt = 1e-2;
    coarse.horizon = 50.0;
    IntegrateOptions fine;
    fine.dt = 1e-3;
    fine.horizon = 50.0;
    const Trajectory tc = swing::integrate(s, x0, coarse);
    const Trajectory tf = swing::integrate(s, x0, fine);
    const std::size_t kc = tc.samples() - 1, kf = tf.samples() - 1;
    REQUIRE(tc.times[kc] == doctest::Approx(50.0));
    REQUIRE(tf.times[kf] == doctest::Approx(50.0));
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(tc.theta_at(kc)[i] - tf.theta_at(kf)[i]) < 1e-6);
        CHECK(std::abs(tc.omega_at(kc)[i] - tf.omega_at(kf)[i]) < 1e-6);
    }
}

TEST_CASE("weighted sums theta_s + omega_s are conserved along trajectories") {
    // d/dt (sum d_i theta_i + sum m_i omega_i) = sum_i force_i = 0 when the
    // natural frequencies are balanced; the monitor tracks the drift.
    const swing::SystemFile sf =
        swing::generate_system(2, 77, 0.10, 0.15, 0.30, 0.40, 0.2);
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 200.0;
    const Trajectory tr =
        swing::integrate(sf.system, State{{2.4, -1.1}, {0.4, -0.6}}, opt);
    CHECK(tr.max_conservation_drift < 1e-8);
}

TEST_CASE("per-oscillator frequency bound holds with tiny slack") {
    std::mt19937 rng(501);
    for (int trial = 0; trial < 3; ++trial) {
        const swing::SystemFile sf = swing::generate_system(
            2, 900 + static_cast<std::uint64_t>(trial), 0.10, 0.15, 0.30, 0.40,
            0.2);
        const State x0{oracles::random_vector(rng, 2, -3.0, 3.0),
                       oracles::random_vector(rng, 2, -1.0, 1.0)};
        const std::vector<double> bound = swing::freq_bound(sf.system, x0);
        for (int i = 0; i < 2; ++i) {
            double asum = 0.0;
            for (int j = 0; j < 2; ++j) asum += sf.system.graph().weight(i, j);
            const double expect =
                std::abs(x0.omega[i]) +
                (std::abs(sf.system.omega_nat()[i]) + asum) / sf.system.d()[i];
            CHECK(bound[i] == doctest::Approx(expect).epsilon(1e-14));
        }
        IntegrateOptions opt;
        opt.dt = 1e-3;
        opt.horizon = 60.0;
        const Trajectory tr = swing::integrate(sf.system, x0, opt);
        CHECK(tr.max_bound_excess <= 1e-10);
    }
}

TEST_CASE("divergent step size is reported as a numeric blow-up") {
    const SwingSystem s = oracles::uniform_pair(0.1, 0.35, 0.2);
    IntegrateOptions opt;
    opt.dt = 10.0;  // amplifies the damped mode geometrically
    opt.horizon = 10000.0;
    CHECK_THROWS_AS(
        swing::integrate(s, State{{0.0, 1.0}, {5.0, -5.0}}, opt),
        swing::NumericError);
    try {
        swing::integrate(s, State{{0.0, 1.0}, {5.0, -5.0}}, opt);
    } catch (const swing::NumericError& e) {
        CHECK(std::string(e.what()).find("blow-up") != std::string::npos);
    }
}

TEST_CASE("integration options are validated") {
    const SwingSystem s = oracles::uniform_pair(0.1, 0.35, 0.2);
    IntegrateOptions opt;
    opt.dt = 0.0;
    CHECK_THROWS_AS(swing::integrate(s, State{{0, 0}, {0, 0}}, opt),
                    std::invalid_argument);
    opt.dt = 1e-3;
    opt.horizon = 0.0;
    CHECK_THROWS_AS(swing::integrate(s, State{{0, 0}, {0, 0}}, opt),
                    std::invalid_argument);
}

TEST_CASE("sync detection on an exactly quiet trajectory") {
    const SwingSystem s = oracles::uniform_pair(0.1, 0.35, 0.2);
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 2.0;
    const Trajectory tr =
        swing::integrate(s, State{{0.3, 0.3}, {0.0, 0.0}}, opt);
    const swing::SyncReport rep = swing::detect_sync(tr, 1e-6);
    CHECK(rep.synced);
    REQUIRE(rep.t_sync.has_value());
    CHECK(*rep.t_sync == 0.0);
    // Spread is identically zero: no usable samples for a log-linear fit.
    CHECK_FALSE(rep.rate.has_value());
    CHECK_FALSE(rep.r_squared.has_value());
    REQUIRE(rep.final_phase_gaps.size() == 4);
    CHECK(rep.final_phase_gaps[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("generated system from a spread state: sync with clean decay") {
    const swing::SystemFile sf =
        swing::generate_system(2, 1, 0.10, 0.15, 0.30, 0.40, 0.2);
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 200.0;
    const State x0 = swing::init_frequencies(sf.system, {3.0, 1.0});
    const Trajectory tr = swing::integrate(sf.system, x0, opt);
    const swing::SyncReport rep = swing::detect_sync(tr, 1e-6);
    CHECK(rep.synced);
    REQUIRE(rep.t_sync.has_value());
    CHECK(*rep.t_sync > 0.0);
    CHECK(*rep.t_sync <= 200.0);
    REQUIRE(rep.rate.has_value());
    CHECK(*rep.rate < 0.0);
    REQUIRE(rep.r_squared.has_value());
    CHECK(*rep.r_squared > 0.99);
}

TEST_CASE("uncoupled oscillators with distinct drifts never lock") {
    const SwingSystem s({0.1, 0.1}, {0.35, 0.35}, {0.1, -0.1},
                        WeightedGraph(2, {0.0, 0.0, 0.0, 0.0}));
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 50.0;
    const State x0 = swing::init_frequencies(s, {0.0, 0.0});
    const Trajectory tr = swing::integrate(s, x0, opt);
    const swing::SyncReport rep = swing::detect_sync(tr, 1e-6);
    CHECK_FALSE(rep.synced);
    CHECK_FALSE(rep.t_sync.has_value());
    // Spread settles at |Omega_1/d_1 - Omega_2/d_2|.
    CHECK(tr.spread.back() == doctest::Approx(0.2 / 0.35).epsilon(1e-6));
}

TEST_CASE("sync flag requires the spread to stay quiet through the horizon") {
    // Build a synthetic trajectory whose spread dips below tolerance and then
    // rises again: the detector must not report sync.
    Trajectory tr;
    tr.n = 2;
    tr.dt = 0.1;
    const std::vector<double> spread = {0.5, 0.3, 1e-9, 1e-9, 0.2, 0.4};
    for (std::size_t k = 0; k < spread.size(); ++k) {
        tr.times.push_back(0.1 * static_cast<double>(k));
        tr.thetas.insert(tr.thetas.end(), {0.0, 0.0});
        tr.omegas.insert(tr.omegas.end(), {0.0, spread[k]});
        tr.spread.push_back(spread[k]);
        tr.diam.push_back(0.0);
        tr.etilde.push_back(0.0);
        tr.diss.push_back(0.0);
        tr.conserved.push_back(0.0);
    }
    const swing::SyncReport rep = swing::detect_sync(tr, 1e-6);
    CHECK_FALSE(rep.synced);

    // Truncate after the quiet stretch: now the last violation is interior
    // and sync starts at the first sample after it.
    Trajectory cut = tr;
    cut.times.resize(4);
    cut.spread.resize(4);
    cut.thetas.resize(8);
    cut.omegas.resize(8);
    cut.diam.resize(4);
    cut.etilde.resize(4);
    cut.diss.resize(4);
    cut.conserved.resize(4);
    const swing::SyncReport rep2 = swing::detect_sync(cut, 1e-6);
    CHECK(rep2.synced);
    REQUIRE(rep2.t_sync.has_value());
    CHECK(*rep2.t_sync == doctest::Approx(0.2));
}

TEST_CASE("monitor channels are computed from the recorded states") {
    const SwingSystem s({0.1, 0.12}, {0.3, 0.4}, {0.01, -0.01},
                        WeightedGraph::complete(2, 0.2));
    IntegrateOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 1.0;
    opt.energy_eps = 0.8;
    const Trajectory tr =
        swing::integrate(s, State{{1.0, -0.5}, {0.2, 0.6}}, opt);
    for (std::size_t k = 0; k < tr.samples(); k += 97) {
        const State x{{tr.theta_at(k)[0], tr.theta_at(k)[1]},
                      {tr.omega_at(k)[0], tr.omega_at(k)[1]}};
        CHECK(tr.diam[k] ==
              doctest::Approx(std::abs(x.theta[0] - x.theta[1])).epsilon(1e-13));
        CHECK(tr.spread[k] ==
              doctest::Approx(std::abs(x.omega[0] - x.omega[1])).epsilon(1e-13));
        CHECK(tr.etilde[k] ==
              doctest::Approx(swing::energy_tilde(s, x, 0.8)).epsilon(1e-12));
        CHECK(tr.diss[k] ==
              doctest::Approx(swing::dissipation(x)).epsilon(1e-12));
        const swing::WeightedSums ws = swing::weighted_sums(s, x);
        CHECK(tr.conserved[k] ==
              doctest::Approx(ws.theta_s + ws.omega_s).epsilon(1e-12));
    }
}
