#include "swingroa.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "roa.hpp"
#include "system_io.hpp"

struct swing_system {
    swing::SystemFile file;
};

struct swing_trajectory {
    swing::Trajectory tr;
};

struct swing_scan_result {
    swing::RoaMap map;
    swing::SystemFile file;  // echoed into metadata
    swing::RegionStats stats;
};

namespace {

thread_local std::string g_last_error;

swing_status fail(swing_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

// Uniform exception -> status mapping for every entry point.
template <typename Fn>
swing_status guarded(Fn&& fn) {
    try {
        fn();
        return SWING_OK;
    } catch (const swing::ParseError& e) {
        return fail(SWING_ERR_PARSE, e.what());
    } catch (const swing::DomainError& e) {
        return fail(SWING_ERR_DOMAIN, e.what());
    } catch (const swing::NumericError& e) {
        return fail(SWING_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SWING_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SWING_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SWING_ERR_INTERNAL, e.what());
    }
}

swing_status require(bool ok, const char* what) {
    return ok ? SWING_OK : fail(SWING_ERR_INVALID_ARGUMENT, what);
}

char* copy_out(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

swing::State make_state(const swing_system* s, const double* theta0,
                        const double* omega0) {
    const int n = s->file.system.size();
    swing::State x;
    x.theta.assign(theta0, theta0 + n);
    if (omega0)
        x.omega.assign(omega0, omega0 + n);
    else
        x.omega.assign(static_cast<std::size_t>(n), 0.0);
    return x;
}

swing_certificate to_c(const swing::CertificateReport& r) {
    swing_certificate c{};
    c.n = r.n;
    c.d0 = r.d0;
    c.r0 = r.r0;
    c.lambda = r.lambda;
    c.h1_pass = r.h1_pass ? 1 : 0;
    c.h2_pass = r.h2_pass ? 1 : 0;
    c.h3_pass = r.h3_pass ? 1 : 0;
    c.certified = r.certified() ? 1 : 0;
    c.h2_lhs = r.h2_lhs;
    c.h2_rhs = r.h2_rhs;
    c.eps_lo = r.eps_lo;
    c.eps_hi = r.eps_hi;
    c.eps = r.eps;
    c.eps_is_auto = r.eps_is_auto ? 1 : 0;
    c.eps_admissible = r.eps_admissible ? 1 : 0;
    c.c0 = r.c0;
    c.c1 = r.c1;
    c.c_ell = r.c_ell;
    c.c_ell_tilde = r.c_ell_tilde;
    c.omega_c = r.omega_c;
    c.omega_hat_norm = r.omega_hat_norm;
    c.e_tilde_0 = r.e_tilde_0;
    c.lhs_h3 = r.lhs_h3;
    c.rhs_h3 = r.rhs_h3;
    c.margin = r.margin;
    return c;
}

swing::CertificateReport from_c(const swing_certificate& c) {
    swing::CertificateReport r;
    r.n = c.n;
    r.d0 = c.d0;
    r.r0 = c.r0;
    r.lambda = c.lambda;
    r.h1_pass = c.h1_pass != 0;
    r.h2_pass = c.h2_pass != 0;
    r.h3_pass = c.h3_pass != 0;
    r.h2_lhs = c.h2_lhs;
    r.h2_rhs = c.h2_rhs;
    r.eps_lo = c.eps_lo;
    r.eps_hi = c.eps_hi;
    r.eps = c.eps;
    r.eps_is_auto = c.eps_is_auto != 0;
    r.eps_admissible = c.eps_admissible != 0;
    r.c0 = c.c0;
    r.c1 = c.c1;
    r.c_ell = c.c_ell;
    r.c_ell_tilde = c.c_ell_tilde;
    r.omega_c = c.omega_c;
    r.omega_hat_norm = c.omega_hat_norm;
    r.e_tilde_0 = c.e_tilde_0;
    r.lhs_h3 = c.lhs_h3;
    r.rhs_h3 = c.rhs_h3;
    r.margin = c.margin;
    return r;
}

}  // namespace

extern "C" {

const char* swing_status_name(swing_status status) {
    switch (status) {
        case SWING_OK: return "ok";
        case SWING_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SWING_ERR_PARSE: return "parse error";
        case SWING_ERR_DOMAIN: return "domain error";
        case SWING_ERR_NUMERIC: return "numeric error";
        case SWING_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* swing_last_error(void) { return g_last_error.c_str(); }

void swing_string_free(char* text) { delete[] text; }

swing_status swing_system_create(int n, const double* m, const double* d,
                                 const double* omega, const double* coupling,
                                 swing_system** out) {
    if (swing_status st = require(out && m && d && omega && coupling,
                                  "null argument"))
        return st;
    if (swing_status st = require(n >= 1, "n must be >= 1")) return st;
    return guarded([&] {
        swing::SwingSystem sys(
            std::vector<double>(m, m + n), std::vector<double>(d, d + n),
            std::vector<double>(omega, omega + n),
            swing::WeightedGraph(
                n, std::vector<double>(coupling,
                                       coupling + static_cast<std::size_t>(n) * n)));
        *out = new swing_system{swing::SystemFile{std::move(sys), std::nullopt}};
    });
}

swing_status swing_system_from_json(const char* text, swing_system** out) {
    if (swing_status st = require(out && text, "null argument")) return st;
    return guarded([&] { *out = new swing_system{swing::load_system_json(text)}; });
}

swing_status swing_system_generate(int n, unsigned long long seed, double m_lo,
                                   double m_hi, double d_lo, double d_hi,
                                   double coupling, swing_system** out) {
    if (swing_status st = require(out != nullptr, "null argument")) return st;
    return guarded([&] {
        *out = new swing_system{
            swing::generate_system(n, seed, m_lo, m_hi, d_lo, d_hi, coupling)};
    });
}

void swing_system_free(swing_system* s) { delete s; }

int swing_system_size(const swing_system* s) {
    return s ? s->file.system.size() : 0;
}

swing_status swing_system_to_json(const swing_system* s, char** out) {
    if (swing_status st = require(s && out, "null argument")) return st;
    return guarded([&] { *out = copy_out(swing::system_to_json(s->file)); });
}

swing_status swing_derive_frequencies(const swing_system* s, const double* theta,
                                      double* omega_out) {
    if (swing_status st = require(s && theta && omega_out, "null argument"))
        return st;
    return guarded([&] {
        const int n = s->file.system.size();
        const swing::State x = swing::init_frequencies(
            s->file.system, std::vector<double>(theta, theta + n));
        std::memcpy(omega_out, x.omega.data(), sizeof(double) * x.omega.size());
    });
}

swing_status swing_certify(const swing_system* s, const double* theta0,
                           const double* omega0, double d0, const double* eps,
                           swing_certificate* out) {
    if (swing_status st = require(s && theta0 && out, "null argument")) return st;
    return guarded([&] {
        const swing::State x0 = make_state(s, theta0, omega0);
        const std::optional<double> e =
            eps ? std::optional<double>(*eps) : std::nullopt;
        *out = to_c(swing::certify(s->file.system, x0, d0, e));
    });
}

swing_status swing_certificate_to_json(const swing_certificate* c, char** out) {
    if (swing_status st = require(c && out, "null argument")) return st;
    return guarded([&] { *out = copy_out(swing::certificate_to_json(from_c(*c))); });
}

void swing_sim_options_default(swing_sim_options* opt) {
    if (!opt) return;
    opt->dt = 1e-3;
    opt->horizon = 200.0;
    opt->energy_eps = 1.0;
}

swing_status swing_simulate(const swing_system* s, const double* theta0,
                            const double* omega0, const swing_sim_options* opt,
                            swing_trajectory** out) {
    if (swing_status st = require(s && theta0 && out, "null argument")) return st;
    return guarded([&] {
        swing_sim_options o;
        if (opt)
            o = *opt;
        else
            swing_sim_options_default(&o);
        swing::IntegrateOptions io;
        io.dt = o.dt;
        io.horizon = o.horizon;
        io.energy_eps = o.energy_eps;
        const swing::State x0 = make_state(s, theta0, omega0);
        *out = new swing_trajectory{swing::integrate(s->file.system, x0, io)};
    });
}

void swing_trajectory_free(swing_trajectory* tr) { delete tr; }

long long swing_trajectory_samples(const swing_trajectory* tr) {
    return tr ? static_cast<long long>(tr->tr.samples()) : 0;
}

swing_status swing_trajectory_sample(const swing_trajectory* tr, long long k,
                                     double* t, double* theta, double* omega) {
    if (swing_status st = require(tr != nullptr, "null argument")) return st;
    if (swing_status st =
            require(k >= 0 && k < static_cast<long long>(tr->tr.samples()),
                    "sample index out of range"))
        return st;
    const std::size_t idx = static_cast<std::size_t>(k);
    if (t) *t = tr->tr.times[idx];
    if (theta)
        std::memcpy(theta, tr->tr.theta_at(idx), sizeof(double) * tr->tr.n);
    if (omega)
        std::memcpy(omega, tr->tr.omega_at(idx), sizeof(double) * tr->tr.n);
    return SWING_OK;
}

swing_status swing_trajectory_monitors(const swing_trajectory* tr, long long k,
                                       double* out) {
    if (swing_status st = require(tr && out, "null argument")) return st;
    if (swing_status st =
            require(k >= 0 && k < static_cast<long long>(tr->tr.samples()),
                    "sample index out of range"))
        return st;
    const std::size_t idx = static_cast<std::size_t>(k);
    out[0] = tr->tr.diam[idx];
    out[1] = tr->tr.spread[idx];
    out[2] = tr->tr.etilde[idx];
    out[3] = tr->tr.diss[idx];
    out[4] = tr->tr.conserved[idx];
    return SWING_OK;
}

double swing_trajectory_conservation_drift(const swing_trajectory* tr) {
    return tr ? tr->tr.max_conservation_drift : 0.0;
}

double swing_trajectory_bound_excess(const swing_trajectory* tr) {
    return tr ? tr->tr.max_bound_excess : 0.0;
}

swing_status swing_trajectory_to_csv(const swing_trajectory* tr, int stride,
                                     char** out) {
    if (swing_status st = require(tr && out, "null argument")) return st;
    return guarded([&] { *out = copy_out(swing::trajectory_to_csv(tr->tr, stride)); });
}

swing_status swing_detect_sync(const swing_trajectory* tr, double tol,
                               swing_sync_report* out) {
    if (swing_status st = require(tr && out, "null argument")) return st;
    return guarded([&] {
        const swing::SyncReport rep = swing::detect_sync(tr->tr, tol);
        out->synced = rep.synced ? 1 : 0;
        out->has_t_sync = rep.t_sync.has_value() ? 1 : 0;
        out->t_sync = rep.t_sync.value_or(0.0);
        out->has_rate = rep.rate.has_value() ? 1 : 0;
        out->rate = rep.rate.value_or(0.0);
        out->has_r_squared = rep.r_squared.has_value() ? 1 : 0;
        out->r_squared = rep.r_squared.value_or(0.0);
    });
}

swing_status swing_sync_report_to_json(const swing_sync_report* rep, char** out) {
    if (swing_status st = require(rep && out, "null argument")) return st;
    return guarded([&] {
        swing::SyncReport r;
        r.synced = rep->synced != 0;
        if (rep->has_t_sync) r.t_sync = rep->t_sync;
        if (rep->has_rate) r.rate = rep->rate;
        if (rep->has_r_squared) r.r_squared = rep->r_squared;
        *out = copy_out(swing::sync_report_to_json(r));
    });
}

swing_status swing_detect_sync_json(const swing_trajectory* tr, double tol,
                                    char** out) {
    if (swing_status st = require(tr && out, "null argument")) return st;
    return guarded([&] {
        *out = copy_out(swing::sync_report_to_json(swing::detect_sync(tr->tr, tol)));
    });
}

void swing_scan_options_default(swing_scan_options* opt) {
    if (!opt) return;
    constexpr double pi = 3.14159265358979323846;
    opt->theta1_lo = 0.0;
    opt->theta1_hi = pi;
    opt->theta2_lo = 0.0;
    opt->theta2_hi = pi;
    opt->resolution = 100;
    opt->d0_list = nullptr;
    opt->d0_count = 0;
    opt->eps_list = nullptr;
    opt->eps_count = 0;
    opt->mode = SWING_SCAN_BOTH;
    opt->dt = 1e-3;
    opt->horizon = 200.0;
    opt->sync_tol = 1e-6;
    opt->threads = 0;
    opt->seed = 0;
}

swing_status swing_scan(const swing_system* s, const swing_scan_options* opt,
                        swing_scan_result** out) {
    if (swing_status st = require(s && opt && out, "null argument")) return st;
    if (swing_status st = require(opt->d0_list && opt->d0_count >= 1,
                                  "d0 list must have at least one entry"))
        return st;
    if (swing_status st = require(opt->mode >= SWING_SCAN_CERTIFIED &&
                                      opt->mode <= SWING_SCAN_BOTH,
                                  "invalid scan mode"))
        return st;
    return guarded([&] {
        swing::ScanSpec spec;
        spec.theta1_lo = opt->theta1_lo;
        spec.theta1_hi = opt->theta1_hi;
        spec.theta2_lo = opt->theta2_lo;
        spec.theta2_hi = opt->theta2_hi;
        spec.resolution = opt->resolution;
        spec.d0_list.assign(opt->d0_list, opt->d0_list + opt->d0_count);
        if (opt->eps_list && opt->eps_count > 0)
            spec.eps_list.assign(opt->eps_list, opt->eps_list + opt->eps_count);
        spec.mode = opt->mode == SWING_SCAN_CERTIFIED ? swing::ScanMode::certified
                    : opt->mode == SWING_SCAN_SIMULATED
                        ? swing::ScanMode::simulated
                        : swing::ScanMode::both;
        spec.dt = opt->dt;
        spec.horizon = opt->horizon;
        spec.sync_tol = opt->sync_tol;
        spec.threads = opt->threads;
        spec.seed = opt->seed;
        swing::RoaMap map = swing::scan(s->file.system, spec);
        swing::RegionStats stats = swing::region_stats(map);
        *out = new swing_scan_result{std::move(map), s->file, std::move(stats)};
    });
}

void swing_scan_free(swing_scan_result* r) { delete r; }

long long swing_scan_soundness_violations(const swing_scan_result* r) {
    return r ? r->stats.soundness_violations : -1;
}

swing_status swing_scan_to_csv(const swing_scan_result* r, char** out) {
    if (swing_status st = require(r && out, "null argument")) return st;
    return guarded([&] { *out = copy_out(swing::roamap_to_csv(r->map)); });
}

swing_status swing_scan_metadata_json(const swing_scan_result* r, char** out) {
    if (swing_status st = require(r && out, "null argument")) return st;
    return guarded([&] {
        *out = copy_out(swing::scan_metadata_json(r->map, r->file));
    });
}

swing_status swing_scan_stats_json(const swing_scan_result* r, char** out) {
    if (swing_status st = require(r && out, "null argument")) return st;
    return guarded([&] { *out = copy_out(swing::region_stats_json(r->stats)); });
}

}  // extern "C"
