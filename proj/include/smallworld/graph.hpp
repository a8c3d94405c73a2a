#ifndef SMALLWORLD_GRAPH_HPP
#define SMALLWORLD_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smallworld {

class InvalidParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SizeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Circular distance min(|i-j|, n-|i-j|) on a ring of n nodes.
int ring_distance(int i, int j, int n);

/// A bijection on [n] stored with its inverse.
struct Permutation {
    std::vector<int> forward;
    std::vector<int> inverse;

    Permutation() = default;
    explicit Permutation(std::vector<int> fwd);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(forward.size()); }
    int operator()(int i) const { return forward[i]; }
};

/// Watts-Strogatz parameter bundle (n, k, beta).
/// k must be even with 0 < k < n-1; beta in [0,1].
struct WsParams {
    int n = 0;
    int k = 0;
    double beta = 0.0;

    WsParams() = default;
    WsParams(int n_, int k_, double beta_);

    /// Edge probability for a lattice pair: 1 - beta*(1 - beta*k/(n-1)).
    double p_in() const { return 1.0 - beta * (1.0 - beta * k / (n - 1.0)); }
    /// Edge probability for a non-lattice pair: beta*k/(n-1).
    double q() const { return beta * k / (n - 1.0); }
};

/// Simple undirected graph: symmetric 0/1 adjacency, zero diagonal.
/// Rows are bit-packed so row inner products reduce to AND+popcount.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int size() const { return n_; }
    int words_per_row() const { return wpr_; }

    bool has_edge(int i, int j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1u;
    }
    /// Sets A_ij = A_ji = 1. Self-loops are rejected.
    void add_edge(int i, int j);

    std::span<const std::uint64_t> row(int i) const {
        return {bits_.data() + static_cast<std::size_t>(i) * wpr_,
                static_cast<std::size_t>(wpr_)};
    }

    int degree(int i) const;
    long long edge_count() const;

    /// Popcount of the AND of rows i and j, i.e. <A_i, A_j>.
    long long row_inner(int i, int j) const;

    bool operator==(const Graph&) const = default;

private:
    std::span<std::uint64_t> mutable_row(int i) {
        return {bits_.data() + static_cast<std::size_t>(i) * wpr_,
                static_cast<std::size_t>(wpr_)};
    }

    int n_ = 0;
    int wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Ring lattice on n nodes: i ~ j iff ring_distance(i, j, n) <= k/2, i != j.
/// Requires k even, 0 < k < n-1.
Graph ring_lattice(int n, int k);

/// Relabels g by p: output H with H_{p(i),p(j)} = A_{ij}.
Graph permute(const Graph& g, const Permutation& p);

/// <A, B> = sum_ij A_ij B_ij = 2 * (number of common edges).
long long matrix_inner(const Graph& g1, const Graph& g2);

/// Edge-list text format: header "# n=<n>", then "u,v" per line with
/// u < v, sorted lexicographically. 0-based indices.
void save_edges(const Graph& g, std::ostream& out);
Graph load_edges(std::istream& in);
void save_edges_file(const Graph& g, const std::string& path);
Graph load_edges_file(const std::string& path);

/// Permutation text format: line i holds forward[i].
void save_permutation_file(const Permutation& p, const std::string& path);
Permutation load_permutation_file(const std::string& path);

} // namespace smallworld

#endif
