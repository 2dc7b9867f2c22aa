#pragma once

#include <vector>

#include "model.hpp"

namespace swing {

// Potential  f(theta) = sum_k omega_nat_k theta_k + (1/2) sum_{k,l} a_kl cos(theta_k - theta_l).
double potential(const SwingSystem& s, const std::vector<double>& theta);

// Component i: omega_nat_i + sum_j a_ij sin(theta_j - theta_i). Identical to the
// force term of the equations of motion (the system is gradient-like).
std::vector<double> grad_potential(const SwingSystem& s, const std::vector<double>& theta);

// Quadratic form  E[theta, omega] = eps <D theta, theta> + 2 eps <M theta, omega> + <M omega, omega>.
double energy_e(const SwingSystem& s, const State& x, double eps);

// Same form evaluated on the centered phases theta - theta_c (theta_c = mean):
// Et = eps sum d_i (theta_i - theta_c)^2 + 2 eps sum m_i (theta_i - theta_c) omega_i
//      + sum m_i omega_i^2.
double energy_tilde(const SwingSystem& s, const State& x, double eps);

// Dissipation gauge  D[theta, omega] = |omega|^2 + |theta - theta_c|^2.
double dissipation(const State& x);

}  // namespace swing
