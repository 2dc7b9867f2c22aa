#pragma once

#include <optional>
#include <vector>

#include "graph.hpp"
#include "model.hpp"

namespace swing {

struct H2Result {
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct EpsInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct CertConstants {
    double c0 = 0.0;
    double c1 = 0.0;
    double c_ell = 0.0;
    double c_ell_tilde = 0.0;
};

// Parametric condition  a_u^2 n^2 (2 m_u + lambda) < d_l^2 (2 R0 a_l L* n - lambda),
// with R0 = sin(d0)/d0. Throws DomainError("D0 out of range") unless d0 in (0, pi).
H2Result check_h2(const ParamSummary& p, const GraphConstants& g, int n, double d0);

// Open interval of admissible eps:
//   ( a_u^2 n^2 / (d_l (2 R0 a_l L* n - lambda)),  d_l / (2 m_u + lambda) ).
// Nonempty exactly when check_h2 passes; throws DomainError("empty epsilon
// interval") otherwise.
EpsInterval epsilon_interval(const ParamSummary& p, const GraphConstants& g, int n,
                             double d0);

// C0 = min{m_l/2, eps d_l (1 - 2 eps m_u/d_l)}
// C1 = max{3 m_u/2, eps d_u (1 + 2 eps m_u/d_l)}
// Cl = min{d_l - 2 eps m_u, 2 eps R0 a_l L* n - a_u^2 n^2/d_l}
// Cl~ = Cl - eps lambda.
// All four are strictly positive for eps inside the admissible interval; throws
// DomainError when eps lies outside it.
CertConstants cert_constants(const ParamSummary& p, const GraphConstants& g, int n,
                             double d0, double eps);

// Et(0) = eps sum d_i (th_i - th_c)^2 + 2 eps sum m_i (th_i - th_c) w_i + sum m_i w_i^2.
double initial_energy(const SwingSystem& s, const State& x0, double eps);

// Everything the verdict rests on, with numeric margins. Unevaluated fields
// stay NaN. Strict inequalities throughout, no slack: margin carries the sign.
struct CertificateReport {
    int n = 0;
    double d0 = 0.0;
    double r0 = 0.0;
    double lambda = 0.0;

    bool h1_pass = false;
    bool h2_pass = false;
    bool h3_pass = false;

    double h2_lhs = 0.0, h2_rhs = 0.0;
    double eps_lo = 0.0, eps_hi = 0.0;
    double eps = 0.0;
    bool eps_is_auto = false;
    bool eps_admissible = false;

    double c0 = 0.0, c1 = 0.0, c_ell = 0.0, c_ell_tilde = 0.0;

    double omega_c = 0.0;        // collective drift removed before evaluation
    double omega_hat_norm = 0.0; // Euclidean norm of the reduced natural frequencies

    double e_tilde_0 = 0.0;
    double lhs_h3 = 0.0;  // max{sqrt(Et(0)), 2 sqrt2 C1 max{eps,1} |omega_hat| / (Cl~ sqrt(C0))}
    double rhs_h3 = 0.0;  // (sqrt(C0)/2) d0
    double margin = 0.0;  // rhs_h3 - lhs_h3

    bool certified() const { return h1_pass && h2_pass && eps_admissible && h3_pass; }
};

// State-independent part of the verdict for one (d0, eps) choice, precomputed
// once so grids of initial states can be classified cheaply. The reduction to
// zero-sum natural frequencies happens here; evaluate() takes states of the
// original system and shifts omega by -omega_c itself.
class CertificateFrame {
public:
    // eps empty => auto policy lo + 0.01 (hi - lo). Never throws on H1/H2
    // failure or inadmissible explicit eps — those yield a frame whose
    // admissible() is false; only d0 outside (0, pi) or an invalid system throw.
    static CertificateFrame build(const SwingSystem& s, double d0,
                                  std::optional<double> eps);

    // H1 + H2 + eps inside the interval (constants well defined).
    bool admissible() const { return admissible_; }
    const CertificateReport& base() const { return base_; }

    // Full report for one initial state.
    CertificateReport evaluate(const State& x0) const;

    // Same verdict as evaluate(x0).certified(), skipping report assembly.
    bool certified(const State& x0) const;

    double initial_energy_micro(const State& x0) const;

private:
    CertificateFrame() = default;

    CertificateReport base_;
    bool admissible_ = false;
    bool k_term_ok_ = false;    // state-independent H3 branch already below rhs
    double threshold_sq_ = 0.0; // rhs_h3^2, Et(0) compared against it directly
    std::vector<double> m_, d_;
    double omega_c_ = 0.0;
};

// One-shot verdict: build(s, d0, eps).evaluate(x0).
CertificateReport certify(const SwingSystem& s, const State& x0, double d0,
                          std::optional<double> eps);

}  // namespace swing
