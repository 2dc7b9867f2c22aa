#pragma once

#include <vector>

#include "graph.hpp"

namespace swing {

// Instantaneous state: phases live on the real line (no wrapping).
struct State {
    std::vector<double> theta;
    std::vector<double> omega;
};

// Oscillator network  m_i th_i'' + d_i th_i' = omega_nat_i + sum_j a_ij sin(th_j - th_i),
// with positive inertia and damping and a symmetric coupling graph.
class SwingSystem {
public:
    SwingSystem(std::vector<double> inertia, std::vector<double> damping,
                std::vector<double> omega_nat, WeightedGraph graph);

    int size() const { return graph_.size(); }
    const std::vector<double>& m() const { return m_; }
    const std::vector<double>& d() const { return d_; }
    const std::vector<double>& omega_nat() const { return omega_nat_; }
    const WeightedGraph& graph() const { return graph_; }

private:
    std::vector<double> m_, d_, omega_nat_;
    WeightedGraph graph_;
};

// Extremal couplings/damping/inertia and the fluctuation constant
// lambda = sqrt(sum d_hat_i^2)/sqrt(n) + 2 sqrt(sum m_hat_i^2)/sqrt(n),
// where x_hat_i = x_i - mean(x).
struct ParamSummary {
    double a_u = 0.0, a_l = 0.0;
    double d_u = 0.0, d_l = 0.0;
    double m_u = 0.0, m_l = 0.0;
    double lambda = 0.0;
    std::vector<double> d_hat, m_hat;
};

// Throws DomainError("no edges") when the graph has no positive entry.
ParamSummary param_summary(const SwingSystem& s);

struct MacroMicro {
    SwingSystem system;  // omega_nat replaced by omega_hat (zero-sum)
    double omega_c = 0.0;
};

// Collective drift omega_c = sum(omega_nat) / sum(d) and the reduced system
// with omega_hat_i = omega_nat_i - d_i * omega_c.
MacroMicro macro_micro(const SwingSystem& s);

struct WeightedSums {
    double theta_c = 0.0;  // mean phase
    double theta_s = 0.0;  // sum d_i theta_i
    double omega_s = 0.0;  // sum m_i omega_i
    double omega_c = 0.0;  // mean frequency
};

WeightedSums weighted_sums(const SwingSystem& s, const State& x);

// Size and finiteness checks; throws std::invalid_argument.
void validate_state(const SwingSystem& s, const State& x);

}  // namespace swing
