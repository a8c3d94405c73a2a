#ifndef SMALLWORLD_DETECTION_HPP
#define SMALLWORLD_DETECTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "smallworld/graph.hpp"
#include "smallworld/linalg.hpp"

namespace smallworld {

class TooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class DetectionMethod { max_likelihood, spectral };
enum class Decision { null_ER, alternative_WS };

struct DetectionOutcome {
    DetectionMethod method;
    double statistic = 0.0;
    double threshold = 0.0;
    Decision decision = Decision::null_ER;
    long long iterations = 0;                 // eigensolver / search effort
    std::optional<Permutation> permutation;   // argmax (ML only)
};

/// Exact maximum of <P B P^T, A> over all permutations plus one argmax,
/// ties broken by lexicographically smallest forward array.
/// Factorial brute force, enforced n <= 10.
std::pair<long long, Permutation> ml_statistic_exact(const Graph& g, int k);

/// nk*k/(n-1) + 2*sqrt(nk*k/(n-1) * log n!) + (2/3)*log n!,
/// with log n! via lgamma (natural log).
double ml_threshold(int n, int k);

/// Maximum-likelihood test: alternative iff the exact statistic reaches
/// ml_threshold(n, k). Enforced n <= 10.
DetectionOutcome ml_test(const Graph& g, int k);

/// HEURISTIC: 2-swap hill climbing on the permutation with random
/// restarts. A lower bound on the exact statistic; carries no guarantee
/// and is never used by the acceptance checks.
std::pair<long long, Permutation> ml_statistic_greedy(const Graph& g, int k,
                                                      int restarts,
                                                      std::uint64_t seed);

/// lambda_2(A) via top_eigenpairs(m = 2).
double spectral_statistic(const Graph& g, std::uint64_t seed = 0);

/// Alternative iff lambda_2(A) >= threshold_const * max(sqrt(k), sqrt(log n)).
DetectionOutcome spectral_test(const Graph& g, int k, double threshold_const,
                               std::uint64_t seed = 0);

/// Default constant for spectral_test when no calibration has been run.
inline constexpr double kDefaultSpectralConst = 2.5;

/// Samples `trials` ER(n, k/(n-1)) graphs and returns the (1-alpha)
/// empirical quantile of lambda_2 divided by max(sqrt(k), sqrt(log n)):
/// the smallest constant with empirical type-I error <= alpha.
/// Workers > 1 parallelizes over trials without changing the result.
double calibrate_spectral_threshold(int n, int k, double alpha, int trials,
                                    std::uint64_t seed, int workers = 1);

/// KL divergence between WS(n,k,beta) and ER(n,k/(n-1)) as a product of
/// independent Bernoulli pairs:
///   (nk/2) * kl_bern(p_in, k/(n-1)) + (n(n-1)/2 - nk/2) * kl_bern(q, k/(n-1)).
/// beta = 1 returns 0 exactly; beta = 0 makes p_in = 1 and the divergence
/// is reported as +infinity.
double kl_ws_er(const WsParams& params);

/// Bernoulli KL p*log(p/q) + (1-p)*log((1-p)/(1-q)).
double kl_bernoulli(double p, double q);

std::string to_string(DetectionMethod m);
std::string to_string(Decision d);

} // namespace smallworld

#endif
