#include "system_io.hpp"

#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "rng.hpp"

namespace swing {

namespace {

constexpr double kPi = 3.14159265358979323846;

using nlohmann::json;

// --- parsing helpers -------------------------------------------------------

double as_real(const json& v, const std::string& field) {
    if (!v.is_number()) throw ParseError(field + ": expected a number");
    return v.get<double>();
}

std::vector<double> as_real_array(const json& v, std::size_t len,
                                  const std::string& field) {
    if (!v.is_array() || v.size() != len)
        throw ParseError(field + ": expected array of length " + std::to_string(len));
    std::vector<double> out;
    out.reserve(len);
    for (const json& e : v) out.push_back(as_real(e, field));
    return out;
}

GenInfo parse_gen(const json& doc) {
    GenInfo gi;
    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_integer() && !s.is_number_unsigned())
            throw ParseError("seed: expected an integer");
        gi.seed = s.get<std::uint64_t>();
        gi.has_seed = true;
    }
    const json& r = doc["random"];
    if (!r.is_object()) throw ParseError("random: expected an object");
    const auto range = [&](const char* key, double& lo, double& hi) {
        if (!r.contains(key)) throw ParseError(std::string("random.") + key + ": missing");
        const std::vector<double> v = as_real_array(r[key], 2, std::string("random.") + key);
        lo = v[0];
        hi = v[1];
        if (!(lo < hi))
            throw ParseError(std::string("random.") + key + ": lo must be < hi");
    };
    range("m_range", gi.m_lo, gi.m_hi);
    range("d_range", gi.d_lo, gi.d_hi);
    if (!r.contains("coupling_value"))
        throw ParseError("random.coupling_value: missing");
    gi.coupling = as_real(r["coupling_value"], "random.coupling_value");
    if (r.contains("omega_scale"))
        gi.omega_scale = as_real(r["omega_scale"], "random.omega_scale");
    if (r.contains("d0_used")) gi.d0_used = as_real(r["d0_used"], "random.d0_used");
    return gi;
}

// --- emission helpers ------------------------------------------------------

void put_num(std::string& out, double v) { out += fmt17(v); }

// NaN/inf have no JSON literal; emit null.
void put_jnum(std::string& out, double v) {
    if (std::isfinite(v))
        out += fmt17(v);
    else
        out += "null";
}

void put_bool(std::string& out, bool b) { out += b ? "true" : "false"; }

void put_jstring(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void put_jarray(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        put_jnum(out, v[i]);
    }
    out += ']';
}

void put_system_fields(std::string& out, const SystemFile& sf, const char* indent) {
    const SwingSystem& s = sf.system;
    const int n = s.size();
    out += indent;
    out += "\"n\": " + std::to_string(n) + ",\n";
    out += indent;
    out += "\"m\": ";
    put_jarray(out, s.m());
    out += ",\n";
    out += indent;
    out += "\"d\": ";
    put_jarray(out, s.d());
    out += ",\n";
    out += indent;
    out += "\"omega\": ";
    put_jarray(out, s.omega_nat());
    out += ",\n";
    out += indent;
    out += "\"coupling\": [";
    for (int i = 0; i < n; ++i) {
        if (i) out += ", ";
        out += '[';
        for (int j = 0; j < n; ++j) {
            if (j) out += ", ";
            put_jnum(out, s.graph().weight(i, j));
        }
        out += ']';
    }
    out += ']';
    if (sf.gen) {
        const GenInfo& g = *sf.gen;
        out += ",\n";
        if (g.has_seed) {
            out += indent;
            out += "\"seed\": " + std::to_string(g.seed) + ",\n";
        }
        out += indent;
        out += "\"random\": {\n";
        const std::string in2 = std::string(indent) + "  ";
        out += in2 + "\"m_range\": [" + fmt17(g.m_lo) + ", " + fmt17(g.m_hi) + "],\n";
        out += in2 + "\"d_range\": [" + fmt17(g.d_lo) + ", " + fmt17(g.d_hi) + "],\n";
        out += in2 + "\"coupling_value\": " + fmt17(g.coupling);
        if (std::isfinite(g.omega_scale)) {
            out += ",\n" + in2 + "\"omega_scale\": " + fmt17(g.omega_scale);
            out += ",\n" + in2 + "\"d0_used\": ";
            put_jnum(out, g.d0_used);
        }
        out += "\n";
        out += indent;
        out += "}";
    }
}

}  // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SystemFile load_system_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top level: expected an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw ParseError("n: expected an integer");
    const int n = doc["n"].get<int>();
    if (n < 1) throw ParseError("n: must be >= 1");

    const bool explicit_form = doc.contains("m") || doc.contains("d") ||
                               doc.contains("omega") || doc.contains("coupling");
    if (!explicit_form) {
        if (!doc.contains("random"))
            throw ParseError("m: missing (provide m/d/omega/coupling or a random block)");
        GenInfo gi = parse_gen(doc);
        if (!gi.has_seed) throw ParseError("seed: required to generate a random instance");
        return generate_system(n, gi.seed, gi.m_lo, gi.m_hi, gi.d_lo, gi.d_hi,
                               gi.coupling);
    }

    for (const char* key : {"m", "d", "omega", "coupling"})
        if (!doc.contains(key)) throw ParseError(std::string(key) + ": missing");

    std::vector<double> m = as_real_array(doc["m"], n, "m");
    std::vector<double> d = as_real_array(doc["d"], n, "d");
    std::vector<double> omega = as_real_array(doc["omega"], n, "omega");

    const json& cj = doc["coupling"];
    if (!cj.is_array() || cj.size() != static_cast<std::size_t>(n))
        throw ParseError("coupling: expected " + std::to_string(n) + " rows");
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const std::vector<double> row =
            as_real_array(cj[i], n, "coupling[" + std::to_string(i) + "]");
        w.insert(w.end(), row.begin(), row.end());
    }

    SystemFile sf{SwingSystem([&] {
                      try {
                          return SwingSystem(std::move(m), std::move(d), std::move(omega),
                                             WeightedGraph(n, std::move(w)));
                      } catch (const std::invalid_argument& e) {
                          throw ParseError(e.what());
                      }
                  }()),
                  std::nullopt};
    if (doc.contains("random")) sf.gen = parse_gen(doc);
    return sf;
}

SystemFile generate_system(int n, std::uint64_t seed, double m_lo, double m_hi,
                           double d_lo, double d_hi, double coupling) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(m_lo < m_hi) || !(m_lo > 0.0))
        throw std::invalid_argument("m range must be positive with lo < hi");
    if (!(d_lo < d_hi) || !(d_lo > 0.0))
        throw std::invalid_argument("d range must be positive with lo < hi");
    if (!(coupling >= 0.0)) throw std::invalid_argument("coupling must be >= 0");

    Rng rng(seed);
    std::vector<double> m(n), d(n), u(n);
    for (int i = 0; i < n; ++i) m[i] = rng.uniform(m_lo, m_hi);
    for (int i = 0; i < n; ++i) d[i] = rng.uniform(d_lo, d_hi);
    for (int i = 0; i < n; ++i) u[i] = rng.uniform(-1.0, 1.0);
    double mean = 0.0;
    for (double v : u) mean += v;
    mean /= n;
    double norm = 0.0;
    for (double& v : u) {
        v -= mean;
        norm += v * v;
    }
    norm = std::sqrt(norm);

    WeightedGraph g = WeightedGraph::complete(n, coupling);
    SwingSystem base(m, d, std::vector<double>(n, 0.0), g);

    // Scale the zero-mean draw so the default certificate holds at the origin
    // grid cell with 50% margin. Both sides of the condition are linear in the
    // scale there: the cell sits on the diagonal (phases equal, coupling terms
    // vanish), so sqrt(Et(0)) = scale * sqrt(sum m_i (u_i/d_i)^2) and the
    // frequency term is scale * 2 sqrt2 C1 max{eps,1} |u| / (Cl~ sqrt(C0)).
    double scale = 0.0;
    double d0_used = std::numeric_limits<double>::quiet_NaN();
    if (norm > 0.0 && coupling > 0.0 && n >= 2) {
        std::vector<double> candidates{kPi / 4.0};
        for (int k = 9; k >= 1; --k) candidates.push_back(k * kPi / 19.0);
        for (double d0 : candidates) {
            const CertificateFrame frame = CertificateFrame::build(base, d0, std::nullopt);
            if (!frame.admissible()) continue;
            const CertificateReport& b = frame.base();
            double t_state = 0.0;
            for (int i = 0; i < n; ++i) t_state += m[i] * (u[i] / d[i]) * (u[i] / d[i]);
            t_state = std::sqrt(t_state);
            const double t_freq = 2.0 * std::sqrt(2.0) * b.c1 * std::max(b.eps, 1.0) *
                                  norm / (b.c_ell_tilde * std::sqrt(b.c0));
            scale = 0.5 * b.rhs_h3 / std::max(t_state, t_freq);
            d0_used = d0;
            break;
        }
    }
    std::vector<double> omega(n);
    for (int i = 0; i < n; ++i) omega[i] = scale * u[i];

    GenInfo gi;
    gi.has_seed = true;
    gi.seed = seed;
    gi.m_lo = m_lo;
    gi.m_hi = m_hi;
    gi.d_lo = d_lo;
    gi.d_hi = d_hi;
    gi.coupling = coupling;
    gi.omega_scale = scale;
    gi.d0_used = d0_used;
    return SystemFile{SwingSystem(std::move(m), std::move(d), std::move(omega),
                                  std::move(g)),
                      gi};
}

std::string system_to_json(const SystemFile& sf) {
    std::string out = "{\n";
    put_system_fields(out, sf, "  ");
    out += "\n}\n";
    return out;
}

std::string certificate_to_json(const CertificateReport& r) {
    std::string o = "{\n";
    o += "  \"n\": " + std::to_string(r.n) + ",\n";
    o += "  \"d0\": ";            put_jnum(o, r.d0);            o += ",\n";
    o += "  \"r0\": ";            put_jnum(o, r.r0);            o += ",\n";
    o += "  \"lambda\": ";        put_jnum(o, r.lambda);        o += ",\n";
    o += "  \"h1_pass\": ";       put_bool(o, r.h1_pass);       o += ",\n";
    o += "  \"h2_pass\": ";       put_bool(o, r.h2_pass);       o += ",\n";
    o += "  \"h2_lhs\": ";        put_jnum(o, r.h2_lhs);        o += ",\n";
    o += "  \"h2_rhs\": ";        put_jnum(o, r.h2_rhs);        o += ",\n";
    o += "  \"eps_lo\": ";        put_jnum(o, r.eps_lo);        o += ",\n";
    o += "  \"eps_hi\": ";        put_jnum(o, r.eps_hi);        o += ",\n";
    o += "  \"eps\": ";           put_jnum(o, r.eps);           o += ",\n";
    o += "  \"eps_is_auto\": ";   put_bool(o, r.eps_is_auto);   o += ",\n";
    o += "  \"eps_admissible\": ";put_bool(o, r.eps_admissible);o += ",\n";
    o += "  \"c0\": ";            put_jnum(o, r.c0);            o += ",\n";
    o += "  \"c1\": ";            put_jnum(o, r.c1);            o += ",\n";
    o += "  \"c_ell\": ";         put_jnum(o, r.c_ell);         o += ",\n";
    o += "  \"c_ell_tilde\": ";   put_jnum(o, r.c_ell_tilde);   o += ",\n";
    o += "  \"omega_c\": ";       put_jnum(o, r.omega_c);       o += ",\n";
    o += "  \"omega_hat_norm\": ";put_jnum(o, r.omega_hat_norm);o += ",\n";
    o += "  \"e_tilde_0\": ";     put_jnum(o, r.e_tilde_0);     o += ",\n";
    o += "  \"lhs_h3\": ";        put_jnum(o, r.lhs_h3);        o += ",\n";
    o += "  \"rhs_h3\": ";        put_jnum(o, r.rhs_h3);        o += ",\n";
    o += "  \"margin\": ";        put_jnum(o, r.margin);        o += ",\n";
    o += "  \"h3_pass\": ";       put_bool(o, r.h3_pass);       o += ",\n";
    o += "  \"certified\": ";     put_bool(o, r.certified());   o += "\n";
    o += "}\n";
    return o;
}

std::string sync_report_to_json(const SyncReport& r) {
    std::string o = "{\n";
    o += "  \"synced\": ";
    put_bool(o, r.synced);
    o += ",\n  \"t_sync\": ";
    put_jnum(o, r.t_sync ? *r.t_sync : std::numeric_limits<double>::quiet_NaN());
    o += ",\n  \"rate\": ";
    put_jnum(o, r.rate ? *r.rate : std::numeric_limits<double>::quiet_NaN());
    o += ",\n  \"r_squared\": ";
    put_jnum(o, r.r_squared ? *r.r_squared : std::numeric_limits<double>::quiet_NaN());
    o += ",\n  \"final_phase_gaps\": [";
    const int n = r.final_phase_gaps.empty()
                      ? 0
                      : static_cast<int>(std::lround(std::sqrt(
                            static_cast<double>(r.final_phase_gaps.size()))));
    for (int i = 0; i < n; ++i) {
        if (i) o += ", ";
        o += '[';
        for (int j = 0; j < n; ++j) {
            if (j) o += ", ";
            put_jnum(o, r.final_phase_gaps[static_cast<std::size_t>(i) * n + j]);
        }
        o += ']';
    }
    o += "]\n}\n";
    return o;
}

std::string trajectory_to_csv(const Trajectory& tr, int stride) {
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
    std::string o = "t";
    for (int i = 1; i <= tr.n; ++i) o += ",theta_" + std::to_string(i);
    for (int i = 1; i <= tr.n; ++i) o += ",omega_" + std::to_string(i);
    o += ",diam,spread,etilde,diss,conserved\n";
    const std::size_t count = tr.samples();
    for (std::size_t k = 0; k < count; ++k) {
        if (k % static_cast<std::size_t>(stride) != 0 && k != count - 1) continue;
        put_num(o, tr.times[k]);
        const double* th = tr.theta_at(k);
        const double* om = tr.omega_at(k);
        for (int i = 0; i < tr.n; ++i) {
            o += ',';
            put_num(o, th[i]);
        }
        for (int i = 0; i < tr.n; ++i) {
            o += ',';
            put_num(o, om[i]);
        }
        o += ',';
        put_num(o, tr.diam[k]);
        o += ',';
        put_num(o, tr.spread[k]);
        o += ',';
        put_num(o, tr.etilde[k]);
        o += ',';
        put_num(o, tr.diss[k]);
        o += ',';
        put_num(o, tr.conserved[k]);
        o += '\n';
    }
    return o;
}

namespace {

std::string combo_label(const ComboResult& combo) {
    char buf[80];
    if (combo.eps_is_auto && !std::isfinite(combo.eps)) {
        std::snprintf(buf, sizeof buf, "cert_%.6g_auto", combo.d0);
    } else {
        std::snprintf(buf, sizeof buf, "cert_%.6g_%.6g", combo.d0, combo.eps);
    }
    return buf;
}

}  // namespace

std::string roamap_to_csv(const RoaMap& m) {
    std::string o = "theta1,theta2";
    for (const ComboResult& combo : m.combos) o += "," + combo_label(combo);
    o += ",sim_sync,t_sync\n";
    const int res = m.spec.resolution;
    for (int i1 = 0; i1 < res; ++i1) {
        for (int i2 = 0; i2 < res; ++i2) {
            const std::size_t c = m.cell_index(i1, i2);
            put_num(o, m.centers1[i1]);
            o += ',';
            put_num(o, m.centers2[i2]);
            for (const ComboResult& combo : m.combos) {
                o += ',';
                o += combo.certified.empty()
                         ? '0'
                         : static_cast<char>('0' + combo.certified[c]);
            }
            o += ',';
            if (m.has_sim) {
                o += static_cast<char>('0' + m.sim_sync[c]);
                o += ',';
                put_num(o, m.sim_t_sync[c]);
            } else {
                o += ',';
            }
            o += '\n';
        }
    }
    return o;
}

std::string scan_metadata_json(const RoaMap& m, const SystemFile& sf) {
    std::string o = "{\n";
    o += "  \"seed\": " + std::to_string(m.spec.seed) + ",\n";
    o += "  \"mode\": ";
    switch (m.spec.mode) {
        case ScanMode::certified: put_jstring(o, "cert"); break;
        case ScanMode::simulated: put_jstring(o, "sim"); break;
        case ScanMode::both: put_jstring(o, "both"); break;
    }
    o += ",\n  \"system\": {\n";
    put_system_fields(o, sf, "    ");
    o += "\n  },\n";
    o += "  \"grid\": {\n";
    o += "    \"theta1_range\": [" + fmt17(m.spec.theta1_lo) + ", " +
         fmt17(m.spec.theta1_hi) + "],\n";
    o += "    \"theta2_range\": [" + fmt17(m.spec.theta2_lo) + ", " +
         fmt17(m.spec.theta2_hi) + "],\n";
    o += "    \"resolution\": " + std::to_string(m.spec.resolution) + "\n";
    o += "  },\n";
    o += "  \"sim\": {\n";
    o += "    \"dt\": " + fmt17(m.spec.dt) + ",\n";
    o += "    \"horizon\": " + fmt17(m.spec.horizon) + ",\n";
    o += "    \"sync_tol\": " + fmt17(m.spec.sync_tol) + "\n";
    o += "  },\n";
    o += "  \"combos\": [\n";
    for (std::size_t i = 0; i < m.combos.size(); ++i) {
        const ComboResult& combo = m.combos[i];
        o += "    {\n";
        o += "      \"column\": ";
        put_jstring(o, combo_label(combo));
        o += ",\n      \"d0\": " + fmt17(combo.d0);
        o += ",\n      \"eps\": ";
        put_jnum(o, combo.eps);
        o += ",\n      \"eps_policy\": ";
        put_jstring(o, combo.eps_is_auto ? "auto" : "explicit");
        o += ",\n      \"admissible\": ";
        put_bool(o, combo.admissible);
        o += ",\n      \"h2_lhs\": ";
        put_jnum(o, combo.base.h2_lhs);
        o += ",\n      \"h2_rhs\": ";
        put_jnum(o, combo.base.h2_rhs);
        o += ",\n      \"eps_lo\": ";
        put_jnum(o, combo.base.eps_lo);
        o += ",\n      \"eps_hi\": ";
        put_jnum(o, combo.base.eps_hi);
        o += ",\n      \"c0\": ";
        put_jnum(o, combo.base.c0);
        o += ",\n      \"c1\": ";
        put_jnum(o, combo.base.c1);
        o += ",\n      \"c_ell\": ";
        put_jnum(o, combo.base.c_ell);
        o += ",\n      \"c_ell_tilde\": ";
        put_jnum(o, combo.base.c_ell_tilde);
        o += ",\n      \"certified_count\": " + std::to_string(combo.certified_count);
        o += "\n    }";
        if (i + 1 < m.combos.size()) o += ',';
        o += '\n';
    }
    o += "  ],\n";
    long failures = 0;
    for (const std::string& note : m.cell_notes)
        if (!note.empty()) ++failures;
    o += "  \"cell_failures\": [";
    if (failures > 0) {
        o += '\n';
        bool first = true;
        const int res = m.spec.resolution;
        for (int i1 = 0; i1 < res; ++i1) {
            for (int i2 = 0; i2 < res; ++i2) {
                const std::size_t c = m.cell_index(i1, i2);
                if (m.cell_notes[c].empty()) continue;
                if (!first) o += ",\n";
                first = false;
                o += "    {\"theta1\": " + fmt17(m.centers1[i1]) +
                     ", \"theta2\": " + fmt17(m.centers2[i2]) + ", \"note\": ";
                put_jstring(o, m.cell_notes[c]);
                o += "}";
            }
        }
        o += "\n  ";
    }
    o += "]\n}\n";
    return o;
}

std::string region_stats_json(const RegionStats& st) {
    std::string o = "{\n";
    o += "  \"total_cells\": " + std::to_string(st.total_cells) + ",\n";
    o += "  \"combos\": [\n";
    for (std::size_t i = 0; i < st.combos.size(); ++i) {
        const ComboStat& cs = st.combos[i];
        o += "    {\"d0\": " + fmt17(cs.d0) + ", \"eps\": ";
        put_jnum(o, cs.eps);
        o += ", \"admissible\": ";
        put_bool(o, cs.admissible);
        o += ", \"certified_count\": " + std::to_string(cs.certified_count);
        o += ", \"ratio\": ";
        put_jnum(o, cs.ratio);
        o += "}";
        if (i + 1 < st.combos.size()) o += ',';
        o += '\n';
    }
    o += "  ],\n";
    o += "  \"certified_union\": " + std::to_string(st.certified_union) + ",\n";
    o += "  \"sim_count\": ";
    o += st.sim_count >= 0 ? std::to_string(st.sim_count) : "null";
    o += ",\n  \"conservativeness\": ";
    put_jnum(o, st.conservativeness);
    o += ",\n  \"soundness_violations\": ";
    o += st.soundness_violations >= 0 ? std::to_string(st.soundness_violations) : "null";
    o += ",\n  \"eps_nesting_violations\": [";
    for (std::size_t i = 0; i < st.eps_nesting_violations.size(); ++i) {
        if (i) o += ", ";
        o += std::to_string(st.eps_nesting_violations[i]);
    }
    o += "]\n}\n";
    return o;
}

}  // namespace swing
