#include "smallworld/generator.hpp"

#include <cmath>

#include "smallworld/rng.hpp"

namespace smallworld {

double Rng::next_normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    double u1, u2;
    do {
        u1 = next_double();
    } while (u1 == 0.0);
    u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * M_PI * u2);
    have_cached_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

Permutation random_permutation(int n, std::uint64_t seed) {
    if (n < 1) throw InvalidParameters("random_permutation: n must be positive");
    Rng rng(seed, /*stream=*/0x7065726du); // "perm"
    std::vector<int> fwd(n);
    for (int i = 0; i < n; ++i) fwd[i] = i;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(fwd[i], fwd[j]);
    }
    return Permutation(std::move(fwd));
}

namespace {

// Pairs {i,j}, i<j are sampled row-major; row i consumes substream
// mix64(seed, tag, i) so parallel generation per row would reproduce the
// sequential output bit for bit.
Graph sample_pairwise(int n, std::uint64_t seed, std::uint64_t tag,
                      auto&& edge_prob) {
    Graph g(n);
    for (int i = 0; i < n - 1; ++i) {
        Rng row_rng(mix64(seed, tag), static_cast<std::uint64_t>(i));
        for (int j = i + 1; j < n; ++j) {
            double u = row_rng.next_double();
            if (u < edge_prob(i, j)) g.add_edge(i, j);
        }
    }
    return g;
}

} // namespace

std::pair<Graph, Permutation> sample_ws(const SampleSpec& spec) {
    // Re-validate: SampleSpec fields are assignable after construction.
    const WsParams p(spec.params.n, spec.params.k, spec.params.beta);

    Permutation pi;
    switch (spec.permutation_mode) {
        case PermutationMode::identity:
            pi = Permutation::identity(p.n);
            break;
        case PermutationMode::random:
            pi = random_permutation(p.n, spec.seed);
            break;
        case PermutationMode::explicit_perm:
            if (!spec.explicit_permutation ||
                spec.explicit_permutation->size() != p.n)
                throw InvalidParameters("sample_ws: explicit permutation of wrong size");
            pi = *spec.explicit_permutation;
            break;
    }

    const double p_in = p.p_in();
    const double q = p.q();
    const int half_k = p.k / 2;
    Graph g = sample_pairwise(
        p.n, spec.seed, /*tag=*/0x7773u /* "ws" */, [&](int i, int j) {
            bool lattice =
                ring_distance(pi.inverse[i], pi.inverse[j], p.n) <= half_k;
            return lattice ? p_in : q;
        });
    return {std::move(g), std::move(pi)};
}

Graph sample_er(int n, double prob, std::uint64_t seed) {
    if (n < 1) throw InvalidParameters("sample_er: n must be positive");
    if (!(prob >= 0.0 && prob <= 1.0))
        throw InvalidParameters("sample_er: p must lie in [0,1]");
    return sample_pairwise(n, seed, /*tag=*/0x6572u /* "er" */,
                           [&](int, int) { return prob; });
}

} // namespace smallworld
