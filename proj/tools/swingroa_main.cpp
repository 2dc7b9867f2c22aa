// swingroa — command-line front end for the synchronization toolkit.
//
// Four commands:
//   gen       emit a random two-oscillator system file (seeded, reproducible)
//   check     evaluate the analytic sync certificate for a system + initial state
//   simulate  integrate the swing dynamics and report sync diagnostics
//   scan      sweep a grid of initial phases, certified and/or simulated
//
// All heavy lifting happens behind the C API in swingroa.h; this file is
// argument parsing, file I/O, and exit-code policy only.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swingroa.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exit-code policy: 0 success, 1 runtime/verdict failure, 2 bad input.
int exit_for(swing_status st) {
    switch (st) {
        case SWING_OK:
            return 0;
        case SWING_ERR_PARSE:
        case SWING_ERR_DOMAIN:
        case SWING_ERR_INVALID_ARGUMENT:
            return 2;
        default:
            return 1;
    }
}

int report_error(swing_status st) {
    std::cerr << "error (" << swing_status_name(st) << "): " << swing_last_error()
              << "\n";
    return exit_for(st);
}

bool read_file(const std::string& path, std::string& out, std::string& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err = "cannot open file: " + path;
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text,
                std::string& err) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        err = "cannot open file for writing: " + path;
        return false;
    }
    out << text;
    out.flush();
    if (!out) {
        err = "failed writing file: " + path;
        return false;
    }
    return true;
}

bool parse_list(const std::string& text, std::vector<double>& out,
                std::string& err) {
    out.clear();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            while (pos < item.size() &&
                   std::isspace(static_cast<unsigned char>(item[pos])))
                ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            err = "not a number: '" + item + "'";
            return false;
        }
    }
    if (out.empty()) {
        err = "empty list";
        return false;
    }
    return true;
}

struct SystemHandle {
    swing_system* ptr = nullptr;
    ~SystemHandle() { swing_system_free(ptr); }
};

struct TrajectoryHandle {
    swing_trajectory* ptr = nullptr;
    ~TrajectoryHandle() { swing_trajectory_free(ptr); }
};

struct ScanHandle {
    swing_scan_result* ptr = nullptr;
    ~ScanHandle() { swing_scan_free(ptr); }
};

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { swing_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

int load_system(const std::string& path, SystemHandle& sys) {
    std::string text, err;
    if (!read_file(path, text, err)) {
        std::cerr << "error: " << err << "\n";
        return 2;
    }
    if (swing_status st = swing_system_from_json(text.c_str(), &sys.ptr))
        return report_error(st);
    return 0;
}

// Resolve --theta0 / --omega0 flags into concrete vectors of length n.
// omega accepts the keyword "derive" (steady-flow initial frequencies).
int resolve_state(const swing_system* sys, const std::string& theta_flag,
                  const std::string& omega_flag, std::vector<double>& theta,
                  std::vector<double>& omega) {
    const int n = swing_system_size(sys);
    std::string err;
    if (theta_flag.empty()) {
        theta.assign(static_cast<std::size_t>(n), 0.0);
    } else if (!parse_list(theta_flag, theta, err)) {
        std::cerr << "error: --theta0: " << err << "\n";
        return 2;
    }
    if (static_cast<int>(theta.size()) != n) {
        std::cerr << "error: --theta0: expected " << n << " values, got "
                  << theta.size() << "\n";
        return 2;
    }
    if (omega_flag == "derive") {
        omega.assign(static_cast<std::size_t>(n), 0.0);
        if (swing_status st =
                swing_derive_frequencies(sys, theta.data(), omega.data()))
            return report_error(st);
    } else if (omega_flag.empty()) {
        omega.assign(static_cast<std::size_t>(n), 0.0);
    } else {
        if (!parse_list(omega_flag, omega, err)) {
            std::cerr << "error: --omega0: " << err << "\n";
            return 2;
        }
        if (static_cast<int>(omega.size()) != n) {
            std::cerr << "error: --omega0: expected " << n << " values, got "
                      << omega.size() << "\n";
            return 2;
        }
    }
    return 0;
}

int run_gen(int n, unsigned long long seed, double m_lo, double m_hi, double d_lo,
            double d_hi, double coupling, const std::string& out_path) {
    SystemHandle sys;
    if (swing_status st = swing_system_generate(n, seed, m_lo, m_hi, d_lo, d_hi,
                                                coupling, &sys.ptr))
        return report_error(st);
    OwnedString json;
    if (swing_status st = swing_system_to_json(sys.ptr, &json.ptr))
        return report_error(st);
    const std::string text = json.str() + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::string err;
        if (!write_file(out_path, text, err)) {
            std::cerr << "error: " << err << "\n";
            return 1;
        }
    }
    return 0;
}

int run_check(const std::string& file, double d0, const std::string& eps_flag,
              const std::string& theta_flag, const std::string& omega_flag) {
    SystemHandle sys;
    if (int rc = load_system(file, sys)) return rc;

    std::vector<double> theta, omega;
    if (int rc = resolve_state(sys.ptr, theta_flag, omega_flag, theta, omega))
        return rc;

    std::optional<double> eps;
    if (eps_flag != "auto") {
        std::vector<double> vals;
        std::string err;
        if (!parse_list(eps_flag, vals, err) || vals.size() != 1) {
            std::cerr << "error: --eps: expected 'auto' or one real value\n";
            return 2;
        }
        eps = vals[0];
    }

    swing_certificate cert;
    const double* eps_ptr = eps ? &*eps : nullptr;
    if (swing_status st = swing_certify(sys.ptr, theta.data(), omega.data(), d0,
                                        eps_ptr, &cert))
        return report_error(st);

    OwnedString json;
    if (swing_status st = swing_certificate_to_json(&cert, &json.ptr))
        return report_error(st);
    std::cout << json.str() << "\n";
    return cert.certified ? 0 : 1;
}

int run_simulate(const std::string& file, const std::string& theta_flag,
                 const std::string& omega_flag, double dt, double horizon,
                 double tol, double energy_eps, int stride,
                 const std::string& out_path) {
    SystemHandle sys;
    if (int rc = load_system(file, sys)) return rc;

    std::vector<double> theta, omega;
    if (int rc = resolve_state(sys.ptr, theta_flag, omega_flag, theta, omega))
        return rc;

    swing_sim_options opt;
    swing_sim_options_default(&opt);
    opt.dt = dt;
    opt.horizon = horizon;
    opt.energy_eps = energy_eps;

    TrajectoryHandle tr;
    if (swing_status st =
            swing_simulate(sys.ptr, theta.data(), omega.data(), &opt, &tr.ptr))
        return report_error(st);

    OwnedString csv;
    if (swing_status st = swing_trajectory_to_csv(tr.ptr, stride, &csv.ptr))
        return report_error(st);
    std::string err;
    if (!write_file(out_path, csv.str(), err)) {
        std::cerr << "error: " << err << "\n";
        return 1;
    }

    OwnedString json;
    if (swing_status st = swing_detect_sync_json(tr.ptr, tol, &json.ptr))
        return report_error(st);
    std::cout << json.str() << "\n";
    return 0;
}

int run_scan(const std::string& file, const std::string& d0_flag,
             const std::string& eps_flag, int res, const std::string& mode_flag,
             double dt, double horizon, double tol, int threads,
             unsigned long long seed, const std::string& csv_path,
             const std::string& meta_path) {
    SystemHandle sys;
    if (int rc = load_system(file, sys)) return rc;

    std::vector<double> d0_list;
    std::string err;
    if (!parse_list(d0_flag, d0_list, err)) {
        std::cerr << "error: --d0-list: " << err << "\n";
        return 2;
    }
    std::vector<double> eps_list;
    if (eps_flag != "auto") {
        if (!parse_list(eps_flag, eps_list, err)) {
            std::cerr << "error: --eps-list: " << err << "\n";
            return 2;
        }
    }

    int mode;
    if (mode_flag == "cert")
        mode = SWING_SCAN_CERTIFIED;
    else if (mode_flag == "sim")
        mode = SWING_SCAN_SIMULATED;
    else if (mode_flag == "both")
        mode = SWING_SCAN_BOTH;
    else {
        std::cerr << "error: --mode: expected cert, sim, or both\n";
        return 2;
    }

    swing_scan_options opt;
    swing_scan_options_default(&opt);
    opt.resolution = res;
    opt.d0_list = d0_list.data();
    opt.d0_count = static_cast<int>(d0_list.size());
    if (!eps_list.empty()) {
        opt.eps_list = eps_list.data();
        opt.eps_count = static_cast<int>(eps_list.size());
    }
    opt.mode = mode;
    opt.dt = dt;
    opt.horizon = horizon;
    opt.sync_tol = tol;
    opt.threads = threads;
    opt.seed = seed;

    ScanHandle scan;
    if (swing_status st = swing_scan(sys.ptr, &opt, &scan.ptr))
        return report_error(st);

    OwnedString csv;
    if (swing_status st = swing_scan_to_csv(scan.ptr, &csv.ptr))
        return report_error(st);
    if (!write_file(csv_path, csv.str(), err)) {
        std::cerr << "error: " << err << "\n";
        return 1;
    }

    OwnedString meta;
    if (swing_status st = swing_scan_metadata_json(scan.ptr, &meta.ptr))
        return report_error(st);
    if (!write_file(meta_path, meta.str() + "\n", err)) {
        std::cerr << "error: " << err << "\n";
        return 1;
    }

    OwnedString stats;
    if (swing_status st = swing_scan_stats_json(scan.ptr, &stats.ptr))
        return report_error(st);
    std::cout << stats.str() << "\n";

    const long long unsound = swing_scan_soundness_violations(scan.ptr);
    if (unsound > 0) {
        std::cerr << "error: " << unsound
                  << " certified cell(s) failed to synchronize in simulation\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "swingroa — explicit region-of-attraction certificates for "
        "second-order oscillator networks"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand(
        "gen", "Generate a seeded random system file (two oscillators by default)");
    int gen_n = 2;
    unsigned long long gen_seed = 0;
    double m_lo = 0.10, m_hi = 0.15, d_lo = 0.30, d_hi = 0.40, coupling = 0.2;
    bool paper_defaults = false;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Number of oscillators")->capture_default_str();
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--m-lo", m_lo, "Inertia range lower bound")
        ->capture_default_str();
    gen->add_option("--m-hi", m_hi, "Inertia range upper bound")
        ->capture_default_str();
    gen->add_option("--d-lo", d_lo, "Damping range lower bound")
        ->capture_default_str();
    gen->add_option("--d-hi", d_hi, "Damping range upper bound")
        ->capture_default_str();
    gen->add_option("--coupling", coupling, "Uniform coupling weight")
        ->capture_default_str();
    gen->add_flag("--paper-defaults", paper_defaults,
                  "Pin m in (0.10,0.15), d in (0.30,0.40), coupling 0.2");
    gen->add_option("--out", gen_out, "Output path (default: stdout)");

    // --- check ---
    auto* check = app.add_subcommand(
        "check", "Evaluate the analytic certificate for a system + initial state");
    std::string check_file, check_eps = "auto", check_theta, check_omega;
    double check_d0 = 0.0;
    check->add_option("file", check_file, "System JSON file")->required();
    check->add_option("--d0", check_d0, "Phase-diameter level, in (0, pi)")
        ->required();
    check->add_option("--eps", check_eps,
                      "Energy tuning parameter: 'auto' or a real value")
        ->capture_default_str();
    check->add_option("--theta0", check_theta,
                      "Initial phases, comma-separated (default: zeros)");
    check->add_option("--omega0", check_omega,
                      "Initial frequencies, comma-separated or 'derive' "
                      "(default: zeros)");

    // --- simulate ---
    auto* simulate = app.add_subcommand(
        "simulate", "Integrate the dynamics and report sync diagnostics");
    std::string sim_file, sim_theta, sim_omega, sim_out = "trajectory.csv";
    double sim_dt = 1e-3, sim_horizon = 200.0, sim_tol = 1e-6, sim_eps = 1.0;
    int sim_stride = 100;
    simulate->add_option("file", sim_file, "System JSON file")->required();
    simulate->add_option("--theta0", sim_theta, "Initial phases, comma-separated")
        ->required();
    simulate->add_option("--omega0", sim_omega,
                         "Initial frequencies, comma-separated or 'derive' "
                         "(default: zeros)");
    simulate->add_option("--dt", sim_dt, "Integration step")->capture_default_str();
    simulate->add_option("--horizon", sim_horizon, "Final time")
        ->capture_default_str();
    simulate->add_option("--tol", sim_tol, "Frequency-spread sync tolerance")
        ->capture_default_str();
    simulate->add_option("--energy-eps", sim_eps,
                         "Tuning parameter for the energy monitor column")
        ->capture_default_str();
    simulate->add_option("--stride", sim_stride, "CSV sample stride")
        ->capture_default_str();
    simulate->add_option("--out", sim_out, "Trajectory CSV path")
        ->capture_default_str();

    // --- scan ---
    auto* scan = app.add_subcommand(
        "scan", "Sweep a phase grid: certified and/or simulated sync maps");
    std::string scan_file, scan_d0 = "0.78539816339744828",
                           scan_eps = "auto", scan_mode = "both",
                           scan_csv = "roa.csv", scan_meta = "roa_meta.json";
    int scan_res = 100, scan_threads = 0;
    double scan_dt = 1e-3, scan_horizon = 200.0, scan_tol = 1e-6;
    unsigned long long scan_seed = 0;
    scan->add_option("file", scan_file, "System JSON file")->required();
    scan->add_option("--d0-list", scan_d0,
                     "Comma-separated phase-diameter levels (default: pi/4)")
        ->capture_default_str();
    scan->add_option("--eps-list", scan_eps,
                     "'auto' or comma-separated tuning parameters")
        ->capture_default_str();
    scan->add_option("--res", scan_res, "Grid resolution per axis")
        ->capture_default_str();
    scan->add_option("--mode", scan_mode, "cert, sim, or both")
        ->capture_default_str();
    scan->add_option("--dt", scan_dt, "Integration step")->capture_default_str();
    scan->add_option("--horizon", scan_horizon, "Final time per cell")
        ->capture_default_str();
    scan->add_option("--tol", scan_tol, "Frequency-spread sync tolerance")
        ->capture_default_str();
    scan->add_option("--threads", scan_threads,
                     "Worker threads (0 = SWING_ROA_THREADS or hardware)")
        ->capture_default_str();
    scan->add_option("--seed", scan_seed, "Seed recorded in scan metadata")
        ->capture_default_str();
    scan->add_option("--csv", scan_csv, "Grid CSV path")->capture_default_str();
    scan->add_option("--meta", scan_meta, "Metadata JSON path")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) {
        if (paper_defaults) {
            m_lo = 0.10;
            m_hi = 0.15;
            d_lo = 0.30;
            d_hi = 0.40;
            coupling = 0.2;
        }
        return run_gen(gen_n, gen_seed, m_lo, m_hi, d_lo, d_hi, coupling, gen_out);
    }
    if (check->parsed())
        return run_check(check_file, check_d0, check_eps, check_theta,
                         check_omega);
    if (simulate->parsed())
        return run_simulate(sim_file, sim_theta, sim_omega, sim_dt, sim_horizon,
                            sim_tol, sim_eps, sim_stride, sim_out);
    if (scan->parsed())
        return run_scan(scan_file, scan_d0, scan_eps, scan_res, scan_mode,
                        scan_dt, scan_horizon, scan_tol, scan_threads, scan_seed,
                        scan_csv, scan_meta);
    return 2;
}
