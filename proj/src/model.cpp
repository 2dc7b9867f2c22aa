#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "errors.hpp"

namespace swing {

SwingSystem::SwingSystem(std::vector<double> inertia, std::vector<double> damping,
                         std::vector<double> omega_nat, WeightedGraph graph)
    : m_(std::move(inertia)),
      d_(std::move(damping)),
      omega_nat_(std::move(omega_nat)),
      graph_(std::move(graph)) {
    const std::size_t n = static_cast<std::size_t>(graph_.size());
    if (m_.size() != n || d_.size() != n || omega_nat_.size() != n)
        throw std::invalid_argument("m, d, omega must all have length n");
    for (double v : m_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("m entries must be positive and finite");
    for (double v : d_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("d entries must be positive and finite");
    for (double v : omega_nat_)
        if (!std::isfinite(v))
            throw std::invalid_argument("omega entries must be finite");
}

ParamSummary param_summary(const SwingSystem& s) {
    const int n = s.size();
    ParamSummary p;
    bool any_edge = false;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!s.graph().has_edge(i, j)) continue;
            const double a = s.graph().weight(i, j);
            if (!any_edge) {
                p.a_u = p.a_l = a;
                any_edge = true;
            } else {
                p.a_u = std::max(p.a_u, a);
                p.a_l = std::min(p.a_l, a);
            }
        }
    }
    if (!any_edge) throw DomainError("no edges");

    p.d_u = *std::max_element(s.d().begin(), s.d().end());
    p.d_l = *std::min_element(s.d().begin(), s.d().end());
    p.m_u = *std::max_element(s.m().begin(), s.m().end());
    p.m_l = *std::min_element(s.m().begin(), s.m().end());

    const double d_mean = std::accumulate(s.d().begin(), s.d().end(), 0.0) / n;
    const double m_mean = std::accumulate(s.m().begin(), s.m().end(), 0.0) / n;
    p.d_hat.resize(n);
    p.m_hat.resize(n);
    double tr_d2 = 0.0, tr_m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        p.d_hat[i] = s.d()[i] - d_mean;
        p.m_hat[i] = s.m()[i] - m_mean;
        tr_d2 += p.d_hat[i] * p.d_hat[i];
        tr_m2 += p.m_hat[i] * p.m_hat[i];
    }
    const double root_n = std::sqrt(static_cast<double>(n));
    p.lambda = std::sqrt(tr_d2) / root_n + 2.0 * std::sqrt(tr_m2) / root_n;
    return p;
}

MacroMicro macro_micro(const SwingSystem& s) {
    const double tr_d = std::accumulate(s.d().begin(), s.d().end(), 0.0);
    const double omega_c =
        std::accumulate(s.omega_nat().begin(), s.omega_nat().end(), 0.0) / tr_d;
    std::vector<double> omega_hat(s.omega_nat());
    for (int i = 0; i < s.size(); ++i) omega_hat[i] -= s.d()[i] * omega_c;
    return MacroMicro{SwingSystem(s.m(), s.d(), std::move(omega_hat), s.graph()),
                      omega_c};
}

WeightedSums weighted_sums(const SwingSystem& s, const State& x) {
    validate_state(s, x);
    const int n = s.size();
    WeightedSums w;
    for (int i = 0; i < n; ++i) {
        w.theta_c += x.theta[i];
        w.omega_c += x.omega[i];
        w.theta_s += s.d()[i] * x.theta[i];
        w.omega_s += s.m()[i] * x.omega[i];
    }
    w.theta_c /= n;
    w.omega_c /= n;
    return w;
}

void validate_state(const SwingSystem& s, const State& x) {
    const std::size_t n = static_cast<std::size_t>(s.size());
    if (x.theta.size() != n || x.omega.size() != n)
        throw std::invalid_argument("state vectors must have length n");
    for (double v : x.theta)
        if (!std::isfinite(v)) throw std::invalid_argument("theta entries must be finite");
    for (double v : x.omega)
        if (!std::isfinite(v)) throw std::invalid_argument("omega entries must be finite");
}

}  // namespace swing
