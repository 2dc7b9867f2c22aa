// Shared test fixtures and independently-coded reference computations.
//
// Everything here is deliberately written the dumb way (dense matrices,
// all-pairs loops, textbook finite differences) so the production code is
// checked against a second, unrelated derivation rather than against itself.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "energy.hpp"
#include "graph.hpp"
#include "model.hpp"

namespace oracles {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

// Connected graph: random spanning tree (each vertex hooks onto a random
// earlier one), then independent extra edges with probability p_extra.
inline swing::WeightedGraph random_connected_graph(std::mt19937& rng, int n,
                                                   double p_extra, double w_lo,
                                                   double w_hi) {
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    std::uniform_real_distribution<double> weight(w_lo, w_hi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto set_edge = [&](int i, int j) {
        const double v = weight(rng);
        w[static_cast<std::size_t>(i) * n + j] = v;
        w[static_cast<std::size_t>(j) * n + i] = v;
    };
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        set_edge(v, pick(rng));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (w[static_cast<std::size_t>(i) * n + j] == 0.0 &&
                unit(rng) < p_extra)
                set_edge(i, j);
    return swing::WeightedGraph(n, std::move(w));
}

inline std::vector<double> random_vector(std::mt19937& rng, int n, double lo,
                                         double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = dist(rng);
    return v;
}

// Two oscillators, identical parameters everywhere: the workhorse instance for
// hand-computable expectations.
inline swing::SwingSystem uniform_pair(double m, double d, double a,
                                       double omega1 = 0.0, double omega2 = 0.0) {
    return swing::SwingSystem({m, m}, {d, d}, {omega1, omega2},
                              swing::WeightedGraph::complete(2, a));
}

// ---------------------------------------------------------------------------
// Graph oracles
// ---------------------------------------------------------------------------

// Hop diameter by Floyd-Warshall over the unweighted adjacency. Returns -1
// when some pair is unreachable.
inline int diameter_floyd_warshall(const swing::WeightedGraph& g) {
    const int n = g.size();
    const int inf = 1 << 20;
    std::vector<int> dist(static_cast<std::size_t>(n) * n, inf);
    for (int i = 0; i < n; ++i) dist[static_cast<std::size_t>(i) * n + i] = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.has_edge(i, j)) dist[static_cast<std::size_t>(i) * n + j] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dist[static_cast<std::size_t>(i) * n + j] = std::min(
                    dist[static_cast<std::size_t>(i) * n + j],
                    dist[static_cast<std::size_t>(i) * n + k] +
                        dist[static_cast<std::size_t>(k) * n + j]);
    int dmax = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int v = dist[static_cast<std::size_t>(i) * n + j];
            if (v >= inf) return -1;
            dmax = std::max(dmax, v);
        }
    return dmax;
}

// Ordered off-diagonal non-edge count, straight from the definition.
inline int non_edges_brute(const swing::WeightedGraph& g) {
    int c = 0;
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
            if (i != j && !g.has_edge(i, j)) ++c;
    return c;
}

// Sum of |th_l - th_k|^2 over all ordered pairs l != k.
inline double pair_sum_all(const std::vector<double>& th) {
    double s = 0.0;
    for (std::size_t l = 0; l < th.size(); ++l)
        for (std::size_t k = 0; k < th.size(); ++k)
            if (l != k) s += (th[l] - th[k]) * (th[l] - th[k]);
    return s;
}

// Same sum restricted to ordered edges of the graph.
inline double pair_sum_edges(const swing::WeightedGraph& g,
                             const std::vector<double>& th) {
    double s = 0.0;
    for (int l = 0; l < g.size(); ++l)
        for (int k = 0; k < g.size(); ++k)
            if (g.has_edge(l, k)) s += (th[l] - th[k]) * (th[l] - th[k]);
    return s;
}

// ---------------------------------------------------------------------------
// Calculus / quadratic-form oracles
// ---------------------------------------------------------------------------

// Central finite difference of the potential.
inline std::vector<double> fd_gradient(const swing::SwingSystem& s,
                                       std::vector<double> theta, double h) {
    std::vector<double> g(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double save = theta[i];
        theta[i] = save + h;
        const double fp = swing::potential(s, theta);
        theta[i] = save - h;
        const double fm = swing::potential(s, theta);
        theta[i] = save;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

// eps <D u, u> + 2 eps <M u, w> + <M w, w> assembled as explicit dense
// matrix-vector products.
inline double quadratic_energy(const std::vector<double>& m,
                               const std::vector<double>& d,
                               const std::vector<double>& u,
                               const std::vector<double>& w, double eps) {
    const std::size_t n = m.size();
    double du = 0.0, mu = 0.0, mw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        du += d[i] * u[i] * u[i];
        mu += m[i] * u[i] * w[i];
        mw += m[i] * w[i] * w[i];
    }
    return eps * du + 2.0 * eps * mu + mw;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace oracles
