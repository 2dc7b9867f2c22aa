#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "dynamics.hpp"
#include "model.hpp"

namespace swing {

enum class ScanMode { certified, simulated, both };

struct ScanSpec {
    double theta1_lo = 0.0, theta1_hi = 3.14159265358979323846;
    double theta2_lo = 0.0, theta2_hi = 3.14159265358979323846;
    int resolution = 100;  // cells per axis, sampled at cell centers
    std::vector<double> d0_list;   // each in (0, pi)
    std::vector<double> eps_list;  // empty => auto policy per d0
    ScanMode mode = ScanMode::both;
    double dt = 1e-3;
    double horizon = 200.0;
    double sync_tol = 1e-6;
    int threads = 0;  // 0 => SWING_ROA_THREADS env var, else hardware
    std::uint64_t seed = 0;  // provenance only, recorded in metadata
};

// One (d0, eps) certificate column over the grid.
struct ComboResult {
    double d0 = 0.0;
    double eps = 0.0;  // resolved value (auto already applied); NaN if none usable
    bool eps_is_auto = false;
    bool admissible = false;  // H1 + H2 + eps interval membership
    CertificateReport base;   // state-independent part
    std::vector<std::uint8_t> certified;  // res*res; empty if not admissible
    long certified_count = 0;
};

struct RoaMap {
    ScanSpec spec;
    int n = 0;
    std::vector<double> centers1, centers2;  // cell-center coordinates per axis
    std::vector<ComboResult> combos;

    bool has_sim = false;
    std::vector<std::uint8_t> sim_sync;  // res*res
    std::vector<double> sim_t_sync;      // NaN when not synced
    std::vector<std::string> cell_notes; // nonempty only on per-cell failure

    // Cell (i1, i2) = centers1[i1] x centers2[i2), row-major with i2 fastest.
    std::size_t cell_index(int i1, int i2) const {
        return static_cast<std::size_t>(i1) * spec.resolution + i2;
    }
};

// State with the given phases and the stationary-phase frequencies
// omega_i = (omega_nat_i + sum_j a_ij sin(theta_j - theta_i)) / d_i.
State init_frequencies(const SwingSystem& s, std::vector<double> theta0);

// Certificate verdicts per cell for every (d0, eps) combination; does not
// simulate. Cell states come from init_frequencies at cell centers.
RoaMap scan_certified(const SwingSystem& s, ScanSpec spec);

// Ground truth per cell: integrate and detect sustained frequency sync.
RoaMap scan_simulated(const SwingSystem& s, ScanSpec spec);

// Dispatch on spec.mode; "both" fills certificates and simulation.
RoaMap scan(const SwingSystem& s, const ScanSpec& spec);

struct ComboStat {
    double d0 = 0.0;
    double eps = 0.0;
    bool admissible = false;
    long certified_count = 0;
    double ratio = 0.0;  // certified/simulated, NaN without simulation data
};

struct RegionStats {
    long total_cells = 0;
    std::vector<ComboStat> combos;
    long certified_union = 0;  // cells certified by at least one combo
    long sim_count = -1;       // -1 when the map has no simulation data
    double conservativeness = 0.0;  // union ratio, NaN without simulation
    long soundness_violations = -1; // certified-but-not-synced cells; -1 without sim
    // For consecutive admissible eps at the same d0 (ascending): cells
    // certified at the larger eps but not at the smaller. Expected zero;
    // reported, not asserted.
    std::vector<long> eps_nesting_violations;
};

RegionStats region_stats(const RoaMap& m);

}  // namespace swing
