#pragma once

#include <vector>

namespace swing {

// Undirected weighted graph given by a symmetric nonnegative coupling matrix
// with zero diagonal. An edge is any ordered off-diagonal pair (i, j) with
// weight(i, j) > 0 (exact comparison: weights are user data, not computed).
class WeightedGraph {
public:
    // weights is row-major n*n; throws std::invalid_argument on asymmetry,
    // negative/non-finite entries, or a nonzero diagonal.
    WeightedGraph(int n, std::vector<double> weights);

    static WeightedGraph complete(int n, double weight);
    static WeightedGraph path(int n, double weight);

    int size() const { return n_; }
    double weight(int i, int j) const {
        return w_[static_cast<std::size_t>(i) * n_ + j];
    }
    bool has_edge(int i, int j) const { return i != j && weight(i, j) > 0.0; }
    const std::vector<double>& weights() const { return w_; }

private:
    int n_;
    std::vector<double> w_;
};

// Connectivity data and the constant L* = 1 / (1 + diameter * |non-edges|),
// where non-edges are counted over ordered off-diagonal pairs and the diameter
// is in hops (a direct edge contributes 1). diameter and l_star are meaningful
// only when connected.
struct GraphConstants {
    bool connected = false;
    int diameter = 0;
    int w_card = 0;   // ordered edges
    int wc_card = 0;  // ordered off-diagonal non-edges
    double l_star = 0.0;
};

bool is_connected(const WeightedGraph& g);

// Maximum over vertex pairs of the shortest path length in edge hops.
// Throws DomainError("graph not connected") when disconnected.
int hop_diameter(const WeightedGraph& g);

// 1 / (1 + hop_diameter * wc_card); throws DomainError when disconnected.
double l_star(const WeightedGraph& g);

GraphConstants graph_constants(const WeightedGraph& g);

}  // namespace swing
