#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "certificate.hpp"
#include "dynamics.hpp"
#include "model.hpp"
#include "roa.hpp"

namespace swing {

// Provenance of a randomly generated instance; echoed back into every output
// so runs can be reproduced from any artifact.
struct GenInfo {
    bool has_seed = false;
    std::uint64_t seed = 0;
    double m_lo = 0.0, m_hi = 0.0;
    double d_lo = 0.0, d_hi = 0.0;
    double coupling = 0.0;
    // Scale applied to the zero-mean natural-frequency draw and the D0 the
    // scaling was anchored to; NaN when not recorded (hand-written files).
    double omega_scale = std::numeric_limits<double>::quiet_NaN();
    double d0_used = std::numeric_limits<double>::quiet_NaN();
};

struct SystemFile {
    SwingSystem system;
    std::optional<GenInfo> gen;
};

// Accepts either explicit arrays {"n","m","d","omega","coupling"} (optionally
// with "seed"/"random" provenance) or the generative form {"n","seed","random"}
// with the arrays absent. Throws ParseError naming the offending field.
SystemFile load_system_json(const std::string& text);

// Seeded instance: m_i ~ U[m_lo, m_hi), d_i ~ U[d_lo, d_hi), uniform all-to-all
// coupling, and zero-mean natural frequencies scaled so the default
// certificate (D0 = pi/4, auto eps; fallback: largest admissible k*pi/19)
// holds at the origin grid cell with 50% margin. Draw order: m, d, then the
// frequency draw, one value each per oscillator.
SystemFile generate_system(int n, std::uint64_t seed, double m_lo, double m_hi,
                           double d_lo, double d_hi, double coupling);

std::string system_to_json(const SystemFile& sf);
std::string certificate_to_json(const CertificateReport& r);
std::string sync_report_to_json(const SyncReport& r);

// Header t,theta_1..theta_n,omega_1..omega_n,diam,spread,etilde,diss,conserved;
// every stride-th sample plus the final one.
std::string trajectory_to_csv(const Trajectory& tr, int stride);

// Header theta1,theta2,cert_<d0>_<eps>...,sim_sync,t_sync; one row per cell.
// Simulation columns are empty strings when the map has no simulation data;
// t_sync is "nan" for non-synced cells.
std::string roamap_to_csv(const RoaMap& m);

// Seed, system parameters, grid/sim settings, per-combo certificate data and
// any per-cell failures.
std::string scan_metadata_json(const RoaMap& m, const SystemFile& sf);

std::string region_stats_json(const RegionStats& st);

// All numeric text in the emitters: shortest text with 17 significant digits
// ("%.17g"), so byte-identical output means bit-identical values.
std::string fmt17(double v);

}  // namespace swing
