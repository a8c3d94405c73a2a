#ifndef SMALLWORLD_LINALG_HPP
#define SMALLWORLD_LINALG_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "smallworld/graph.hpp"

namespace smallworld {

class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector; // unit norm, first nonzero coordinate positive
    double residual = 0.0;      // ||A v - value * v||_2
};

struct TopEigenResult {
    std::vector<EigenPair> pairs; // descending eigenvalue order
    /// Set when a consecutive gap among the computed values (or, if
    /// requested, between the last value and a rough lambda_{m+1}
    /// estimate) falls below 1e-10 * lambda_1. Flagged, not failed.
    bool degenerate_gap = false;
};

struct TopEigenOptions {
    double tol = 1e-8;
    long long max_iter = 0; // 0: default 10 * n * log(n)
    std::uint64_t seed = 0;
    /// Spend extra (loose-tolerance) iterations estimating lambda_{m+1}
    /// so the degenerate-gap flag covers the trailing gap as well.
    bool probe_next_gap = false;
};

/// Top-m eigenpairs of the adjacency matrix by shifted power iteration
/// with Gram-Schmidt deflation against previously converged vectors.
/// Eigenvalues are algebraic (descending); requires 1 <= m <= min(8, n).
TopEigenResult top_eigenpairs(const Graph& g, int m, const TopEigenOptions& opts = {});

struct DenseEig {
    std::vector<double> values;               // descending
    std::vector<std::vector<double>> vectors; // orthonormal, matching order
};

/// Full dense symmetric eigendecomposition (test oracle, n <= 2048).
DenseEig dense_eig_oracle(const Graph& g);

/// Eigenvalue of the ring-lattice circulant at frequency j:
/// 2 * sum_{i=1}^{k/2} cos(2*pi*i*j / n). Requires k even, 0 <= j <= n/2.
double circulant_eigenvalue(int n, int k, int j);

/// Closed form for the second largest ring-lattice eigenvalue:
/// 2*sin(k*pi/2n)/sin(pi/n) * cos((k+2)*pi/2n). Requires k/n <= 1/2.
double circulant_lambda2(int n, int k);

/// Spectral gap of the expected WS adjacency:
/// (1-beta)*(1-beta*k/(n-1)) * (lambda_2(B) - lambda_3(B)).
double spectral_gap(const WsParams& params);

/// y = A x for the bit-packed adjacency.
void adjacency_matvec(const Graph& g, const std::vector<double>& x,
                      std::vector<double>& y);

} // namespace smallworld

#endif
