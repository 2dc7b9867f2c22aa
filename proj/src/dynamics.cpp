#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "errors.hpp"

namespace swing {

std::pair<std::vector<double>, std::vector<double>> rhs(const SwingSystem& s,
                                                        const State& x) {
    validate_state(s, x);
    const int n = s.size();
    std::vector<double> dth(n), dom(n);
    for (int i = 0; i < n; ++i) {
        dth[i] = x.omega[i];
        double force = s.omega_nat()[i];
        for (int j = 0; j < n; ++j)
            force += s.graph().weight(i, j) * std::sin(x.theta[j] - x.theta[i]);
        dom[i] = (-s.d()[i] * x.omega[i] + force) / s.m()[i];
    }
    return {std::move(dth), std::move(dom)};
}

std::vector<double> freq_bound(const SwingSystem& s, const State& x0) {
    validate_state(s, x0);
    const int n = s.size();
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += s.graph().weight(i, j);
        b[i] = std::abs(x0.omega[i]) + (std::abs(s.omega_nat()[i]) + row) / s.d()[i];
    }
    return b;
}

Rk4Stepper::Rk4Stepper(const SwingSystem& s, State x0, double dt)
    : sys_(&s), n_(s.size()), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    validate_state(s, x0);
    th_ = std::move(x0.theta);
    om_ = std::move(x0.omega);
    th_s_.resize(n_);
    om_s_.resize(n_);
    k1t_.resize(n_); k1w_.resize(n_);
    k2t_.resize(n_); k2w_.resize(n_);
    k3t_.resize(n_); k3w_.resize(n_);
    k4t_.resize(n_); k4w_.resize(n_);
}

void Rk4Stepper::deriv(const double* th, const double* om, double* dth,
                       double* dom) const {
    const SwingSystem& s = *sys_;
    const double* m = s.m().data();
    const double* d = s.d().data();
    const double* w = s.omega_nat().data();
    const double* a = s.graph().weights().data();
    for (int i = 0; i < n_; ++i) {
        dth[i] = om[i];
        double force = w[i];
        const double* row = a + static_cast<std::size_t>(i) * n_;
        const double ti = th[i];
        for (int j = 0; j < n_; ++j) {
            const double aij = row[j];
            if (aij != 0.0) force += aij * std::sin(th[j] - ti);
        }
        dom[i] = (-d[i] * om[i] + force) / m[i];
    }
}

void Rk4Stepper::step() {
    const double h = dt_;
    deriv(th_.data(), om_.data(), k1t_.data(), k1w_.data());
    for (int i = 0; i < n_; ++i) {
        th_s_[i] = th_[i] + 0.5 * h * k1t_[i];
        om_s_[i] = om_[i] + 0.5 * h * k1w_[i];
    }
    deriv(th_s_.data(), om_s_.data(), k2t_.data(), k2w_.data());
    for (int i = 0; i < n_; ++i) {
        th_s_[i] = th_[i] + 0.5 * h * k2t_[i];
        om_s_[i] = om_[i] + 0.5 * h * k2w_[i];
    }
    deriv(th_s_.data(), om_s_.data(), k3t_.data(), k3w_.data());
    for (int i = 0; i < n_; ++i) {
        th_s_[i] = th_[i] + h * k3t_[i];
        om_s_[i] = om_[i] + h * k3w_[i];
    }
    deriv(th_s_.data(), om_s_.data(), k4t_.data(), k4w_.data());
    bool finite = true;
    for (int i = 0; i < n_; ++i) {
        th_[i] += h / 6.0 * (k1t_[i] + 2.0 * k2t_[i] + 2.0 * k3t_[i] + k4t_[i]);
        om_[i] += h / 6.0 * (k1w_[i] + 2.0 * k2w_[i] + 2.0 * k3w_[i] + k4w_[i]);
        finite = finite && std::isfinite(th_[i]) && std::isfinite(om_[i]);
    }
    ++steps_;
    if (!finite) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "blow-up detected at t=%.6g", t());
        throw NumericError(buf);
    }
}

namespace {

struct MonitorValues {
    double diam, spread, etilde, diss, conserved, bound_excess;
};

MonitorValues monitors(const SwingSystem& s, const double* th, const double* om,
                       double eps, const std::vector<double>& bound) {
    const int n = s.size();
    double th_min = th[0], th_max = th[0], om_min = om[0], om_max = om[0];
    double th_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        th_min = std::min(th_min, th[i]);
        th_max = std::max(th_max, th[i]);
        om_min = std::min(om_min, om[i]);
        om_max = std::max(om_max, om[i]);
        th_sum += th[i];
    }
    const double th_c = th_sum / n;
    double et = 0.0, diss = 0.0, cons = 0.0, excess = -1e300;
    for (int i = 0; i < n; ++i) {
        const double cth = th[i] - th_c;
        et += eps * s.d()[i] * cth * cth + 2.0 * eps * s.m()[i] * cth * om[i] +
              s.m()[i] * om[i] * om[i];
        diss += om[i] * om[i] + cth * cth;
        cons += s.d()[i] * th[i] + s.m()[i] * om[i];
        excess = std::max(excess, std::abs(om[i]) - bound[i]);
    }
    return {th_max - th_min, om_max - om_min, et, diss, cons, excess};
}

}  // namespace

Trajectory integrate(const SwingSystem& s, const State& x0, const IntegrateOptions& opt) {
    if (!(opt.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(opt.horizon >= opt.dt))
        throw std::invalid_argument("horizon must be at least dt");
    const long steps = std::lround(opt.horizon / opt.dt);
    const int n = s.size();

    Trajectory tr;
    tr.n = n;
    tr.dt = opt.dt;
    tr.energy_eps = opt.energy_eps;
    tr.freq_bound = freq_bound(s, x0);
    const std::size_t count = static_cast<std::size_t>(steps) + 1;
    tr.times.reserve(count);
    tr.thetas.reserve(count * n);
    tr.omegas.reserve(count * n);
    tr.diam.reserve(count);
    tr.spread.reserve(count);
    tr.etilde.reserve(count);
    tr.diss.reserve(count);
    tr.conserved.reserve(count);
    tr.bound_excess.reserve(count);

    Rk4Stepper stepper(s, x0, opt.dt);
    const auto record = [&](double t) {
        tr.times.push_back(t);
        tr.thetas.insert(tr.thetas.end(), stepper.theta(), stepper.theta() + n);
        tr.omegas.insert(tr.omegas.end(), stepper.omega(), stepper.omega() + n);
        const MonitorValues mv =
            monitors(s, stepper.theta(), stepper.omega(), opt.energy_eps, tr.freq_bound);
        tr.diam.push_back(mv.diam);
        tr.spread.push_back(mv.spread);
        tr.etilde.push_back(mv.etilde);
        tr.diss.push_back(mv.diss);
        tr.conserved.push_back(mv.conserved);
        tr.bound_excess.push_back(mv.bound_excess);
    };
    record(0.0);
    for (long k = 1; k <= steps; ++k) {
        stepper.step();
        record(static_cast<double>(k) * opt.dt);
    }

    const double c0 = tr.conserved.front();
    double drift = 0.0, excess = -1e300;
    for (std::size_t k = 0; k < tr.samples(); ++k) {
        drift = std::max(drift, std::abs(tr.conserved[k] - c0));
        excess = std::max(excess, tr.bound_excess[k]);
    }
    tr.max_conservation_drift = drift;
    tr.max_bound_excess = excess;
    return tr;
}

namespace {

// Least-squares slope + R^2 of y against x. Returns false with fewer than two
// distinct x or zero variance in x.
bool line_fit(const std::vector<double>& x, const std::vector<double>& y,
              double& slope, double& r2) {
    const std::size_t n = x.size();
    if (n < 2) return false;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) return false;
    slope = sxy / sxx;
    r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return true;
}

}  // namespace

SyncReport detect_sync(const Trajectory& tr, double tol) {
    if (tr.samples() == 0) throw std::invalid_argument("empty trajectory");
    const std::size_t count = tr.samples();
    SyncReport rep;

    // Last sample at which the spread still violated tol; synced means at
    // least the final sample is quiet.
    std::ptrdiff_t last_violation = -1;
    for (std::size_t k = 0; k < count; ++k)
        if (!(tr.spread[k] < tol)) last_violation = static_cast<std::ptrdiff_t>(k);
    if (last_violation + 1 < static_cast<std::ptrdiff_t>(count)) {
        rep.synced = true;
        rep.t_sync = last_violation < 0 ? 0.0
                                        : tr.times[static_cast<std::size_t>(last_violation) + 1];
    }

    const int n = tr.n;
    rep.final_phase_gaps.resize(static_cast<std::size_t>(n) * n);
    const double* th_end = tr.theta_at(count - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rep.final_phase_gaps[static_cast<std::size_t>(i) * n + j] =
                th_end[i] - th_end[j];

    if (!rep.synced) return rep;

    // Fit window: from t_sync/2 to the first later sample at or below 1e-12
    // (log of an exact zero excluded), or the horizon. The cutoff scan starts
    // at the window start so a momentarily quiet launch (e.g. released from
    // rest) does not erase the window.
    const double t_lo = *rep.t_sync / 2.0;
    std::size_t hi = count;
    for (std::size_t k = 0; k < count; ++k) {
        if (tr.times[k] < t_lo) continue;
        if (tr.spread[k] <= 1e-12) {
            hi = k;
            break;
        }
    }
    std::vector<double> xs, ys;
    std::vector<std::size_t> window;
    for (std::size_t k = 0; k < hi; ++k)
        if (tr.times[k] >= t_lo && tr.spread[k] > 0.0) window.push_back(k);

    // Peak envelope of an oscillatory ringdown; interior local maxima only.
    std::vector<std::size_t> peaks;
    for (std::size_t w = 0; w < window.size(); ++w) {
        const std::size_t k = window[w];
        if (k == 0 || k + 1 >= count) continue;
        if (tr.spread[k] >= tr.spread[k - 1] && tr.spread[k] > tr.spread[k + 1])
            peaks.push_back(k);
    }
    const std::vector<std::size_t>& chosen = peaks.size() >= 3 ? peaks : window;
    xs.reserve(chosen.size());
    ys.reserve(chosen.size());
    for (std::size_t k : chosen) {
        xs.push_back(tr.times[k]);
        ys.push_back(std::log(tr.spread[k]));
    }
    double slope = 0.0, r2 = 0.0;
    if (line_fit(xs, ys, slope, r2)) {
        rep.rate = slope;
        rep.r_squared = r2;
    }
    return rep;
}

}  // namespace swing
