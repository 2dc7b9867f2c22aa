#include "roa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "errors.hpp"

namespace swing {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SWING_ROA_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void validate_spec(const ScanSpec& spec) {
    if (spec.resolution < 2) throw std::invalid_argument("resolution must be >= 2");
    if (spec.d0_list.empty()) throw std::invalid_argument("d0 list must be nonempty");
    constexpr double pi = 3.14159265358979323846;
    for (double d0 : spec.d0_list)
        if (!(d0 > 0.0) || !(d0 < pi)) throw DomainError("D0 out of range");
    if (!(spec.dt > 0.0) || !(spec.horizon >= spec.dt))
        throw std::invalid_argument("dt and horizon must be positive with horizon >= dt");
    if (!(spec.theta1_hi > spec.theta1_lo) || !(spec.theta2_hi > spec.theta2_lo))
        throw std::invalid_argument("theta ranges must be nonempty");
}

std::vector<double> cell_centers(double lo, double hi, int res) {
    std::vector<double> c(res);
    const double h = (hi - lo) / res;
    for (int i = 0; i < res; ++i) c[i] = lo + h * (i + 0.5);
    return c;
}

RoaMap make_map(const SwingSystem& s, ScanSpec spec) {
    validate_spec(spec);
    RoaMap m;
    m.n = s.size();
    m.centers1 = cell_centers(spec.theta1_lo, spec.theta1_hi, spec.resolution);
    m.centers2 = cell_centers(spec.theta2_lo, spec.theta2_hi, spec.resolution);
    m.spec = std::move(spec);
    return m;
}

// Grid scans sweep the first two phases; any further oscillators sit at 0.
State cell_state(const SwingSystem& s, double th1, double th2) {
    std::vector<double> theta(static_cast<std::size_t>(s.size()), 0.0);
    theta[0] = th1;
    if (s.size() > 1) theta[1] = th2;
    return init_frequencies(s, std::move(theta));
}

// Run fn(cell) over [0, total) on the requested worker count. Each cell writes
// only its own output slots, so the result is identical for any worker count.
template <typename Fn>
void for_each_cell(long total, int threads, Fn&& fn) {
    threads = static_cast<int>(std::min<long>(threads, total));
    if (threads <= 1) {
        for (long c = 0; c < total; ++c) fn(c);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long c = next.fetch_add(1, std::memory_order_relaxed);
                if (c >= total) return;
                fn(c);
            }
        });
    }
    for (auto& th : pool) th.join();
}

void fill_certified(const SwingSystem& s, RoaMap& m) {
    const int res = m.spec.resolution;
    const long total = static_cast<long>(res) * res;

    // One column per (d0, eps) pairing: auto policy pairs each d0 with its own
    // derived eps; an explicit list pairs every d0 with every eps.
    for (double d0 : m.spec.d0_list) {
        if (m.spec.eps_list.empty()) {
            ComboResult combo;
            combo.d0 = d0;
            combo.eps_is_auto = true;
            m.combos.push_back(std::move(combo));
        } else {
            for (double eps : m.spec.eps_list) {
                ComboResult combo;
                combo.d0 = d0;
                combo.eps = eps;
                m.combos.push_back(std::move(combo));
            }
        }
    }

    const int threads = resolve_threads(m.spec.threads);
    for (ComboResult& combo : m.combos) {
        const std::optional<double> eps_arg =
            combo.eps_is_auto ? std::nullopt : std::optional<double>(combo.eps);
        const CertificateFrame frame = CertificateFrame::build(s, combo.d0, eps_arg);
        combo.base = frame.base();
        combo.admissible = frame.admissible();
        combo.eps = frame.base().eps;  // resolved auto value (NaN when unusable)
        combo.certified.assign(static_cast<std::size_t>(total), 0);
        if (!combo.admissible) continue;

        std::vector<std::uint8_t>& out = combo.certified;
        const RoaMap& map = m;
        for_each_cell(total, threads, [&](long c) {
            const int i1 = static_cast<int>(c) / res;
            const int i2 = static_cast<int>(c) % res;
            const State x0 = cell_state(s, map.centers1[i1], map.centers2[i2]);
            out[static_cast<std::size_t>(c)] = frame.certified(x0) ? 1 : 0;
        });
        combo.certified_count = std::count(out.begin(), out.end(), std::uint8_t{1});
    }
}

void fill_simulated(const SwingSystem& s, RoaMap& m) {
    const int res = m.spec.resolution;
    const long total = static_cast<long>(res) * res;
    m.has_sim = true;
    m.sim_sync.assign(static_cast<std::size_t>(total), 0);
    m.sim_t_sync.assign(static_cast<std::size_t>(total), kNaN);
    m.cell_notes.assign(static_cast<std::size_t>(total), std::string());

    const long steps = std::lround(m.spec.horizon / m.spec.dt);
    const double tol = m.spec.sync_tol;
    const int threads = resolve_threads(m.spec.threads);

    for_each_cell(total, threads, [&](long c) {
        const int i1 = static_cast<int>(c) / res;
        const int i2 = static_cast<int>(c) % res;
        State x0 = cell_state(s, m.centers1[i1], m.centers2[i2]);
        try {
            Rk4Stepper stepper(s, std::move(x0), m.spec.dt);
            const int n = stepper.n();
            // Track the last violating sample without storing the trajectory.
            long last_violation = -1;
            const auto spread_of = [&]() {
                const double* om = stepper.omega();
                double lo = om[0], hi = om[0];
                for (int i = 1; i < n; ++i) {
                    lo = std::min(lo, om[i]);
                    hi = std::max(hi, om[i]);
                }
                return hi - lo;
            };
            if (!(spread_of() < tol)) last_violation = 0;
            for (long k = 1; k <= steps; ++k) {
                stepper.step();
                if (!(spread_of() < tol)) last_violation = k;
            }
            if (last_violation <= steps - 1) {
                m.sim_sync[static_cast<std::size_t>(c)] = 1;
                m.sim_t_sync[static_cast<std::size_t>(c)] =
                    last_violation < 0 ? 0.0
                                       : static_cast<double>(last_violation + 1) * m.spec.dt;
            }
        } catch (const NumericError& e) {
            m.cell_notes[static_cast<std::size_t>(c)] = e.what();  // recorded, not fatal
        }
    });
}

}  // namespace

State init_frequencies(const SwingSystem& s, std::vector<double> theta0) {
    if (theta0.size() != static_cast<std::size_t>(s.size()))
        throw std::invalid_argument("theta must have length n");
    const int n = s.size();
    State x;
    x.theta = std::move(theta0);
    x.omega.resize(n);
    for (int i = 0; i < n; ++i) {
        double force = s.omega_nat()[i];
        for (int j = 0; j < n; ++j)
            force += s.graph().weight(i, j) * std::sin(x.theta[j] - x.theta[i]);
        x.omega[i] = force / s.d()[i];
    }
    return x;
}

RoaMap scan_certified(const SwingSystem& s, ScanSpec spec) {
    spec.mode = ScanMode::certified;
    RoaMap m = make_map(s, std::move(spec));
    fill_certified(s, m);
    return m;
}

RoaMap scan_simulated(const SwingSystem& s, ScanSpec spec) {
    spec.mode = ScanMode::simulated;
    RoaMap m = make_map(s, std::move(spec));
    fill_simulated(s, m);
    return m;
}

RoaMap scan(const SwingSystem& s, const ScanSpec& spec) {
    RoaMap m = make_map(s, spec);
    if (spec.mode != ScanMode::simulated) fill_certified(s, m);
    if (spec.mode != ScanMode::certified) fill_simulated(s, m);
    return m;
}

RegionStats region_stats(const RoaMap& m) {
    RegionStats st;
    const long total = static_cast<long>(m.spec.resolution) * m.spec.resolution;
    st.total_cells = total;

    std::vector<std::uint8_t> any(static_cast<std::size_t>(total), 0);
    for (const ComboResult& combo : m.combos) {
        ComboStat cs;
        cs.d0 = combo.d0;
        cs.eps = combo.eps;
        cs.admissible = combo.admissible;
        cs.certified_count = combo.certified_count;
        cs.ratio = kNaN;
        st.combos.push_back(cs);
        for (long c = 0; c < total; ++c)
            if (!combo.certified.empty() && combo.certified[static_cast<std::size_t>(c)])
                any[static_cast<std::size_t>(c)] = 1;
    }
    st.certified_union = std::count(any.begin(), any.end(), std::uint8_t{1});

    if (m.has_sim) {
        st.sim_count = std::count(m.sim_sync.begin(), m.sim_sync.end(), std::uint8_t{1});
        st.conservativeness = st.sim_count > 0
                                  ? static_cast<double>(st.certified_union) / st.sim_count
                                  : kNaN;
        for (ComboStat& cs : st.combos)
            cs.ratio = st.sim_count > 0
                           ? static_cast<double>(cs.certified_count) / st.sim_count
                           : kNaN;
        long violations = 0;
        for (long c = 0; c < total; ++c)
            if (any[static_cast<std::size_t>(c)] && !m.sim_sync[static_cast<std::size_t>(c)])
                ++violations;
        st.soundness_violations = violations;
    }

    // Nesting check within each d0: order its admissible combos by eps and
    // count cells gained when eps grows (expected: regions only shrink).
    for (double d0 : m.spec.d0_list) {
        std::vector<const ComboResult*> group;
        for (const ComboResult& combo : m.combos)
            if (combo.d0 == d0 && combo.admissible) group.push_back(&combo);
        std::sort(group.begin(), group.end(),
                  [](const ComboResult* a, const ComboResult* b) { return a->eps < b->eps; });
        for (std::size_t j = 1; j < group.size(); ++j) {
            long gained = 0;
            for (long c = 0; c < total; ++c)
                if (group[j]->certified[static_cast<std::size_t>(c)] &&
                    !group[j - 1]->certified[static_cast<std::size_t>(c)])
                    ++gained;
            st.eps_nesting_violations.push_back(gained);
        }
    }
    return st;
}

}  // namespace swing
