#include "energy.hpp"

#include <cmath>
#include <stdexcept>

namespace swing {

namespace {

void check_length(const SwingSystem& s, const std::vector<double>& theta) {
    if (theta.size() != static_cast<std::size_t>(s.size()))
        throw std::invalid_argument("theta must have length n");
}

}  // namespace

double potential(const SwingSystem& s, const std::vector<double>& theta) {
    check_length(s, theta);
    const int n = s.size();
    double f = 0.0;
    for (int k = 0; k < n; ++k) f += s.omega_nat()[k] * theta[k];
    double c = 0.0;  // plain double sum; n stays small in every use
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            c += s.graph().weight(k, l) * std::cos(theta[k] - theta[l]);
    return f + 0.5 * c;
}

std::vector<double> grad_potential(const SwingSystem& s, const std::vector<double>& theta) {
    check_length(s, theta);
    const int n = s.size();
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        double acc = s.omega_nat()[i];
        for (int j = 0; j < n; ++j)
            acc += s.graph().weight(i, j) * std::sin(theta[j] - theta[i]);
        g[i] = acc;
    }
    return g;
}

double energy_e(const SwingSystem& s, const State& x, double eps) {
    validate_state(s, x);
    const int n = s.size();
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
        e += eps * s.d()[i] * x.theta[i] * x.theta[i];
        e += 2.0 * eps * s.m()[i] * x.theta[i] * x.omega[i];
        e += s.m()[i] * x.omega[i] * x.omega[i];
    }
    return e;
}

double energy_tilde(const SwingSystem& s, const State& x, double eps) {
    validate_state(s, x);
    const int n = s.size();
    double theta_c = 0.0;
    for (int i = 0; i < n; ++i) theta_c += x.theta[i];
    theta_c /= n;
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = x.theta[i] - theta_c;
        e += eps * s.d()[i] * th * th;
        e += 2.0 * eps * s.m()[i] * th * x.omega[i];
        e += s.m()[i] * x.omega[i] * x.omega[i];
    }
    return e;
}

double dissipation(const State& x) {
    if (x.theta.size() != x.omega.size() || x.theta.empty())
        throw std::invalid_argument("state vectors must be nonempty and equal length");
    const std::size_t n = x.theta.size();
    double theta_c = 0.0;
    for (double t : x.theta) theta_c += t;
    theta_c /= static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double th = x.theta[i] - theta_c;
        d += x.omega[i] * x.omega[i] + th * th;
    }
    return d;
}

}  // namespace swing
