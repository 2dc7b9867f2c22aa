#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace swing {

WeightedGraph::WeightedGraph(int n, std::vector<double> weights)
    : n_(n), w_(std::move(weights)) {
    if (n_ < 1) throw std::invalid_argument("graph size must be >= 1");
    if (w_.size() != static_cast<std::size_t>(n_) * n_)
        throw std::invalid_argument("coupling matrix must be n*n");
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const double v = weight(i, j);
            if (!std::isfinite(v))
                throw std::invalid_argument("coupling entries must be finite");
            if (v < 0.0)
                throw std::invalid_argument("coupling entries must be >= 0");
            if (i == j && v != 0.0)
                throw std::invalid_argument("coupling diagonal must be zero");
            if (v != weight(j, i))
                throw std::invalid_argument("coupling matrix must be symmetric");
        }
    }
}

WeightedGraph WeightedGraph::complete(int n, double weight) {
    std::vector<double> w(static_cast<std::size_t>(n) * n, weight);
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i) * n + i] = 0.0;
    return WeightedGraph(n, std::move(w));
}

WeightedGraph WeightedGraph::path(int n, double weight) {
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        w[static_cast<std::size_t>(i) * n + i + 1] = weight;
        w[static_cast<std::size_t>(i + 1) * n + i] = weight;
    }
    return WeightedGraph(n, std::move(w));
}

namespace {

// BFS from src; dist filled with hop counts, -1 where unreachable.
void bfs(const WeightedGraph& g, int src, std::vector<int>& dist) {
    const int n = g.size();
    dist.assign(n, -1);
    std::vector<int> queue;
    queue.reserve(n);
    queue.push_back(src);
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int v = 0; v < n; ++v) {
            if (dist[v] < 0 && g.has_edge(u, v)) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
}

}  // namespace

bool is_connected(const WeightedGraph& g) {
    std::vector<int> dist;
    bfs(g, 0, dist);
    return std::all_of(dist.begin(), dist.end(), [](int d) { return d >= 0; });
}

int hop_diameter(const WeightedGraph& g) {
    const int n = g.size();
    int diam = 0;
    std::vector<int> dist;
    for (int s = 0; s < n; ++s) {
        bfs(g, s, dist);
        for (int d : dist) {
            if (d < 0) throw DomainError("graph not connected");
            diam = std::max(diam, d);
        }
    }
    return diam;
}

double l_star(const WeightedGraph& g) {
    const GraphConstants c = graph_constants(g);
    if (!c.connected) throw DomainError("graph not connected");
    return c.l_star;
}

GraphConstants graph_constants(const WeightedGraph& g) {
    GraphConstants c;
    c.connected = is_connected(g);
    const int n = g.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.has_edge(i, j)) ++c.w_card;
    c.wc_card = n * (n - 1) - c.w_card;
    if (c.connected) {
        c.diameter = hop_diameter(g);
        c.l_star = 1.0 / (1.0 + static_cast<double>(c.diameter) * c.wc_card);
    }
    return c;
}

}  // namespace swing
