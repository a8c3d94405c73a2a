#include "smallworld/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace smallworld {

int ring_distance(int i, int j, int n) {
    int d = std::abs(i - j);
    return std::min(d, n - d);
}

Permutation::Permutation(std::vector<int> fwd) : forward(std::move(fwd)) {
    const int n = static_cast<int>(forward.size());
    inverse.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        int f = forward[i];
        if (f < 0 || f >= n || inverse[f] != -1)
            throw InvalidParameters("permutation: not a bijection on [n]");
        inverse[f] = i;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> fwd(n);
    for (int i = 0; i < n; ++i) fwd[i] = i;
    return Permutation(std::move(fwd));
}

WsParams::WsParams(int n_, int k_, double beta_) : n(n_), k(k_), beta(beta_) {
    if (n < 3) throw InvalidParameters("WsParams: n must be at least 3");
    if (k <= 0 || k >= n - 1 || k % 2 != 0)
        throw InvalidParameters("WsParams: k must be even with 0 < k < n-1");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw InvalidParameters("WsParams: beta must lie in [0,1]");
    if (p_in() < 0.0 || p_in() > 1.0 || q() < 0.0 || q() > 1.0)
        throw InvalidParameters("WsParams: derived edge probabilities out of [0,1]");
}

Graph::Graph(int n) : n_(n), wpr_((n + 63) / 64) {
    if (n < 0) throw InvalidParameters("Graph: negative node count");
    bits_.assign(static_cast<std::size_t>(n_) * wpr_, 0);
}

void Graph::add_edge(int i, int j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw InvalidParameters("add_edge: index out of range");
    if (i == j) throw InvalidParameters("add_edge: self-loops not allowed");
    mutable_row(i)[j >> 6] |= std::uint64_t{1} << (j & 63);
    mutable_row(j)[i >> 6] |= std::uint64_t{1} << (i & 63);
}

int Graph::degree(int i) const {
    int d = 0;
    for (std::uint64_t w : row(i)) d += std::popcount(w);
    return d;
}

long long Graph::edge_count() const {
    long long total = 0;
    for (int i = 0; i < n_; ++i) total += degree(i);
    return total / 2;
}

long long Graph::row_inner(int i, int j) const {
    auto a = row(i);
    auto b = row(j);
    long long s = 0;
    for (int w = 0; w < wpr_; ++w) s += std::popcount(a[w] & b[w]);
    return s;
}

Graph ring_lattice(int n, int k) {
    if (k <= 0 || k >= n - 1 || k % 2 != 0)
        throw InvalidParameters("ring_lattice: need k even with 0 < k < n-1");
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= k / 2; ++d) g.add_edge(i, (i + d) % n);
    return g;
}

Graph permute(const Graph& g, const Permutation& p) {
    if (p.size() != g.size())
        throw SizeMismatch("permute: permutation size differs from graph size");
    const int n = g.size();
    Graph h(n);
    for (int i = 0; i < n; ++i) {
        auto r = g.row(i);
        for (int w = 0; w < g.words_per_row(); ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                int j = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                if (j > i) h.add_edge(p(i), p(j));
            }
        }
    }
    return h;
}

long long matrix_inner(const Graph& g1, const Graph& g2) {
    if (g1.size() != g2.size())
        throw SizeMismatch("matrix_inner: graphs differ in size");
    long long s = 0;
    for (int i = 0; i < g1.size(); ++i) {
        auto a = g1.row(i);
        auto b = g2.row(i);
        for (int w = 0; w < g1.words_per_row(); ++w)
            s += std::popcount(a[w] & b[w]);
    }
    return s;
}

void save_edges(const Graph& g, std::ostream& out) {
    out << "# n=" << g.size() << "\n";
    for (int i = 0; i < g.size(); ++i) {
        auto r = g.row(i);
        for (int w = 0; w < g.words_per_row(); ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                int j = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                if (j > i) out << i << "," << j << "\n";
            }
        }
    }
}

Graph load_edges(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# n=", 0) != 0)
        throw InvalidParameters("edge file: missing '# n=<n>' header");
    int n = std::stoi(line.substr(4));
    Graph g(n);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InvalidParameters("edge file: malformed line '" + line + "'");
        int u = std::stoi(line.substr(0, comma));
        int v = std::stoi(line.substr(comma + 1));
        if (u >= v)
            throw InvalidParameters("edge file: edges must satisfy u < v");
        g.add_edge(u, v);
    }
    return g;
}

void save_edges_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_edges(g, out);
}

Graph load_edges_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return load_edges(in);
}

void save_permutation_file(const Permutation& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (int f : p.forward) out << f << "\n";
}

Permutation load_permutation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<int> fwd;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        fwd.push_back(std::stoi(line));
    }
    return Permutation(std::move(fwd));
}

} // namespace smallworld
