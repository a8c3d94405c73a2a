#ifndef SMALLWORLD_GENERATOR_HPP
#define SMALLWORLD_GENERATOR_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "smallworld/graph.hpp"

namespace smallworld {

enum class PermutationMode { identity, random, explicit_perm };

struct SampleSpec {
    WsParams params;
    std::uint64_t seed = 0;
    PermutationMode permutation_mode = PermutationMode::identity;
    std::optional<Permutation> explicit_permutation;
};

/// Uniform draw from S_n (Fisher-Yates with rejection sampling).
Permutation random_permutation(int n, std::uint64_t seed);

/// Samples WS(n, k, beta) through the entry-wise Bernoulli channel:
/// a pair {i,j} that is a lattice pair under the hidden permutation is
/// present with probability p_in, any other pair with probability q.
/// Returns the graph together with the ground-truth permutation.
/// Deterministic given the spec; pair {i,j}, i<j draws from substream i.
std::pair<Graph, Permutation> sample_ws(const SampleSpec& spec);

/// Samples ER(n, p): every unordered pair present independently w.p. p.
Graph sample_er(int n, double p, std::uint64_t seed);

} // namespace smallworld

#endif
