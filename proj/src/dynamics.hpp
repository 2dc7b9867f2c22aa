#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "model.hpp"

namespace swing {

struct IntegrateOptions {
    double dt = 1e-3;
    double horizon = 200.0;
    // eps used for the Et monitor channel only; pick the certificate's eps when
    // monitoring its differential inequality, otherwise any positive value.
    double energy_eps = 1.0;
};

// Full-resolution record of one integration: sample k is time k*dt, including
// t = 0. Phases/frequencies are row-major (sample * n + i). Monitor channels
// are evaluated at every sample from the same states.
struct Trajectory {
    int n = 0;
    double dt = 0.0;
    double energy_eps = 1.0;
    std::vector<double> times;
    std::vector<double> thetas, omegas;

    std::vector<double> diam;       // max_i theta_i - min_i theta_i
    std::vector<double> spread;     // max_i omega_i - min_i omega_i
    std::vector<double> etilde;     // Et at energy_eps
    std::vector<double> diss;       // |omega|^2 + |theta - theta_c|^2
    std::vector<double> conserved;  // theta_s + omega_s

    std::vector<double> freq_bound;    // per-oscillator a-priori bound B_i
    std::vector<double> bound_excess;  // per sample: max_i |omega_i| - B_i

    double max_conservation_drift = 0.0;  // max_t |conserved(t) - conserved(0)|
    double max_bound_excess = 0.0;        // max over samples of bound_excess

    std::size_t samples() const { return times.size(); }
    const double* theta_at(std::size_t k) const { return thetas.data() + k * n; }
    const double* omega_at(std::size_t k) const { return omegas.data() + k * n; }
};

// dtheta = omega; domega_i = (-d_i omega_i + omega_nat_i + sum_j a_ij sin(theta_j - theta_i)) / m_i.
std::pair<std::vector<double>, std::vector<double>> rhs(const SwingSystem& s,
                                                        const State& x);

// Per-oscillator bound B_i = |omega_i(0)| + (|omega_nat_i| + sum_j a_ij) / d_i,
// valid along the whole trajectory.
std::vector<double> freq_bound(const SwingSystem& s, const State& x0);

// Classical fixed-step RK4. Throws NumericError("blow-up detected at t=...")
// if the state leaves the representable range (signals dt too large).
Trajectory integrate(const SwingSystem& s, const State& x0, const IntegrateOptions& opt);

// Stepping core for callers that must not store whole trajectories (grid
// scans). Exposes the current state after each step; step() throws the same
// blow-up error as integrate.
class Rk4Stepper {
public:
    Rk4Stepper(const SwingSystem& s, State x0, double dt);

    void step();

    long steps_done() const { return steps_; }
    double t() const { return static_cast<double>(steps_) * dt_; }
    int n() const { return n_; }
    const double* theta() const { return th_.data(); }
    const double* omega() const { return om_.data(); }

private:
    void deriv(const double* th, const double* om, double* dth, double* dom) const;

    const SwingSystem* sys_;
    int n_;
    double dt_;
    long steps_ = 0;
    std::vector<double> th_, om_;
    // scratch: stage states and slopes
    std::vector<double> th_s_, om_s_, k1t_, k1w_, k2t_, k2w_, k3t_, k3w_, k4t_, k4w_;
};

struct SyncReport {
    bool synced = false;
    // First time after which the spread stays < tol through the horizon.
    std::optional<double> t_sync;
    // Decay rate of the spread: least-squares slope of log(spread) over
    // [t_sync/2, first time spread <= 1e-12, or horizon]. An oscillatory
    // ringdown crosses zero, puncturing the log; with >= 3 interior peaks in
    // the window the fit uses the peak envelope (log-decrement estimator),
    // which tracks the modal decay exactly. Absent when fewer than two usable
    // samples exist.
    std::optional<double> rate;
    std::optional<double> r_squared;
    // theta_i - theta_j at the final sample, row-major n*n.
    std::vector<double> final_phase_gaps;
};

SyncReport detect_sync(const Trajectory& tr, double tol);

}  // namespace swing
