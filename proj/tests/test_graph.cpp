#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "smallworld/generator.hpp"
#include "smallworld/graph.hpp"
#include "smallworld/linalg.hpp"
#include "smallworld/rng.hpp"

using namespace smallworld;

namespace {

// Edge set as explicit (u,v) pairs, for brute-force oracles.
std::set<std::pair<int, int>> edge_set(const Graph& g) {
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j)
            if (g.has_edge(i, j)) edges.insert({i, j});
    return edges;
}

Permutation rotation(int n, int shift) {
    std::vector<int> fwd(n);
    for (int i = 0; i < n; ++i) fwd[i] = (i + shift) % n;
    return Permutation(std::move(fwd));
}

} // namespace

TEST_CASE("ring_distance basics") {
    CHECK(ring_distance(0, 5, 6) == 1);
    CHECK(ring_distance(2, 2, 10) == 0);
    CHECK(ring_distance(0, 5, 10) == 5);
    CHECK(ring_distance(9, 0, 10) == 1);
}

TEST_CASE("ring_distance is a metric on the cycle") {
    Rng rng(7);
    for (int t = 0; t < 2000; ++t) {
        int n = 3 + static_cast<int>(rng.next_below(40));
        int i = static_cast<int>(rng.next_below(n));
        int j = static_cast<int>(rng.next_below(n));
        int l = static_cast<int>(rng.next_below(n));
        CHECK(ring_distance(i, j, n) == ring_distance(j, i, n));
        CHECK((ring_distance(i, j, n) == 0) == (i == j));
        CHECK(ring_distance(i, l, n) <=
              ring_distance(i, j, n) + ring_distance(j, l, n));
    }
}

TEST_CASE("ring_lattice structure") {
    Graph c6 = ring_lattice(6, 2);
    CHECK(matrix_inner(c6, c6) == 12);
    for (int i = 0; i < 6; ++i) CHECK(c6.degree(i) == 2);

    Graph g = ring_lattice(8, 4);
    for (int i = 0; i < 8; ++i) CHECK(g.degree(i) == 4);
    CHECK(g.has_edge(0, 2));
    CHECK(!g.has_edge(0, 3));

    CHECK_THROWS_AS(ring_lattice(6, 3), InvalidParameters);
    CHECK_THROWS_AS(ring_lattice(6, 0), InvalidParameters);
    CHECK_THROWS_AS(ring_lattice(6, 6), InvalidParameters);
}

TEST_CASE("ring_lattice is k-regular with top eigenvalue k") {
    Graph g = ring_lattice(100, 10);
    for (int i = 0; i < 100; ++i) CHECK(g.degree(i) == 10);
    auto dense = dense_eig_oracle(g);
    CHECK(dense.values[0] == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("permute identity and rotation invariance of the cycle") {
    Graph c6 = ring_lattice(6, 2);
    CHECK(permute(c6, Permutation::identity(6)) == c6);
    CHECK(permute(c6, rotation(6, 1)) == c6);
}

TEST_CASE("permute preserves spectrum (dense oracle)") {
    Graph c8 = ring_lattice(8, 2);
    Graph h = permute(c8, random_permutation(8, 42));
    auto a = dense_eig_oracle(c8).values;
    auto b = dense_eig_oracle(h).values;
    for (int i = 0; i < 8; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));
}

TEST_CASE("permute preserves edges and degree multiset") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        int n = 5 + static_cast<int>(rng.next_below(40));
        Graph g = sample_er(n, 0.3, rng.next_u64());
        Permutation p = random_permutation(n, rng.next_u64());
        Graph h = permute(g, p);
        CHECK(h.edge_count() == g.edge_count());
        std::vector<int> dg(n), dh(n);
        for (int i = 0; i < n; ++i) {
            dg[i] = g.degree(i);
            dh[i] = h.degree(i);
        }
        std::sort(dg.begin(), dg.end());
        std::sort(dh.begin(), dh.end());
        CHECK(dg == dh);
        // Forward action: H_{p(i),p(j)} = A_{ij}.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(h.has_edge(p(i), p(j)) == g.has_edge(i, j));
    }
    CHECK_THROWS_AS(permute(ring_lattice(6, 2), Permutation::identity(5)),
                    SizeMismatch);
}

TEST_CASE("matrix_inner against edge-set intersection oracle") {
    Graph c6 = ring_lattice(6, 2);
    Graph shifted = permute(c6, rotation(6, 3));
    auto a = edge_set(c6);
    auto b = edge_set(shifted);
    std::vector<std::pair<int, int>> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(common));
    CHECK(matrix_inner(c6, shifted) == 2 * static_cast<long long>(common.size()));

    CHECK(matrix_inner(c6, Graph(6)) == 0);
    CHECK(matrix_inner(c6, c6) == 2 * c6.edge_count());
    CHECK(matrix_inner(c6, shifted) == matrix_inner(shifted, c6));
    CHECK_THROWS_AS(matrix_inner(c6, Graph(7)), SizeMismatch);
}

TEST_CASE("permutation validation") {
    CHECK_THROWS_AS(Permutation({0, 0, 1}), InvalidParameters);
    CHECK_THROWS_AS(Permutation({0, 3, 1}), InvalidParameters);
    Permutation p({2, 0, 1});
    CHECK(p.inverse[2] == 0);
    CHECK(p.inverse[p.forward[1]] == 1);
}

TEST_CASE("WsParams invariants") {
    CHECK_THROWS_AS(WsParams(10, 3, 0.5), InvalidParameters);
    CHECK_THROWS_AS(WsParams(10, 0, 0.5), InvalidParameters);
    CHECK_THROWS_AS(WsParams(10, 10, 0.5), InvalidParameters);
    CHECK_THROWS_AS(WsParams(10, 4, 1.5), InvalidParameters);
    WsParams p(10, 4, 0.25);
    CHECK(p.q() == doctest::Approx(0.25 * 4 / 9.0));
    CHECK(p.p_in() == doctest::Approx(1.0 - 0.25 * (1.0 - 0.25 * 4 / 9.0)));
}

TEST_CASE("edge file round trip is bit exact") {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        int n = 2 + static_cast<int>(rng.next_below(60));
        Graph g = sample_er(n, 0.2, rng.next_u64());
        std::stringstream first, second;
        save_edges(g, first);
        Graph loaded = load_edges(first);
        CHECK(loaded == g);
        save_edges(loaded, second);
        CHECK(first.str() == second.str());
    }
}

TEST_CASE("edge file rejects malformed input") {
    std::stringstream no_header("0,1\n");
    CHECK_THROWS_AS(load_edges(no_header), InvalidParameters);
    std::stringstream bad_order("# n=4\n2,1\n");
    CHECK_THROWS_AS(load_edges(bad_order), InvalidParameters);
    std::stringstream self_loop("# n=4\n1,1\n");
    CHECK_THROWS_AS(load_edges(self_loop), InvalidParameters);
    std::stringstream out_of_range("# n=4\n1,9\n");
    CHECK_THROWS_AS(load_edges(out_of_range), InvalidParameters);
}
