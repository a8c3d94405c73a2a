#ifndef SMALLWORLD_RECONSTRUCTION_HPP
#define SMALLWORLD_RECONSTRUCTION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "smallworld/graph.hpp"
#include "smallworld/linalg.hpp"

namespace smallworld {

enum class ReconstructionMethod { correlation, spectral_ordering };

struct NeighborhoodEstimate {
    int n = 0;
    int k = 0;
    ReconstructionMethod method = ReconstructionMethod::correlation;
    std::vector<std::vector<int>> sets; // per node, sorted, size k, i excluded
    std::vector<double> angles;         // spectral ordering only
    bool degenerate_gap = false;        // spectral ordering only
};

/// Ring neighborhoods implied by the hidden permutation:
/// N(v_i) = { v_j : ring_distance(pi^-1(i), pi^-1(j), n) <= k/2, j != i }.
struct GroundTruth {
    Permutation permutation;
    int k = 0;

    std::vector<int> neighborhood(int i) const;
};

/// Correlation thresholding: for each node the k largest correlation
/// scores <A_i, A_j> + 16 A_ij (common-neighbor count plus a weighted
/// direct-edge term), ties broken by smaller index j. Without the
/// direct-edge term the noiseless lattice is unrecoverable: the farthest
/// in-window neighbor scores one below the nearest outside node.
NeighborhoodEstimate correlation_threshold(const Graph& g, int k, int workers = 1);

/// Spectral ordering: angles of (u^T A_col_i, v^T A_col_i) with u, v the
/// 2nd/3rd eigenvectors of A (or of split_sample when given), nodes
/// sorted by angle, estimate = k/2 nearest on each side in cyclic rank
/// order. Angle ties broken by node index.
NeighborhoodEstimate spectral_order(const Graph& g, int k,
                                    const Graph* split_sample = nullptr,
                                    std::uint64_t seed = 0);

/// max_i |est(i) symmetric-difference truth(i)| / k, in [0, 2].
double neighborhood_error(const NeighborhoodEstimate& est, const GroundTruth& truth);

} // namespace smallworld

#endif
