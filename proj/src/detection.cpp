#include "smallworld/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "smallworld/generator.hpp"
#include "smallworld/parallel.hpp"
#include "smallworld/rng.hpp"

namespace smallworld {

namespace {

constexpr int kMaxExactN = 10;

std::vector<std::pair<int, int>> lattice_pairs(int n, int k) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (ring_distance(i, j, n) <= k / 2) pairs.emplace_back(i, j);
    return pairs;
}

std::vector<std::uint8_t> dense_adjacency(const Graph& g) {
    const int n = g.size();
    std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i) * n + j] = g.has_edge(i, j);
    return a;
}

long long objective(const std::vector<std::uint8_t>& a, int n,
                    const std::vector<std::pair<int, int>>& pairs,
                    const std::vector<int>& perm) {
    long long s = 0;
    for (auto [i, j] : pairs)
        s += a[static_cast<std::size_t>(perm[i]) * n + perm[j]];
    return 2 * s;
}

void check_ml_params(int n, int k) {
    if (k <= 0 || k >= n - 1 || k % 2 != 0)
        throw InvalidParameters("ml statistic: need k even with 0 < k < n-1");
}

} // namespace

std::pair<long long, Permutation> ml_statistic_exact(const Graph& g, int k) {
    const int n = g.size();
    if (n > kMaxExactN)
        throw TooLarge("ml_statistic_exact: factorial search limited to n <= 10");
    check_ml_params(n, k);

    const auto pairs = lattice_pairs(n, k);
    const auto a = dense_adjacency(g);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    long long best = -1;
    std::vector<int> best_perm;
    // next_permutation walks lexicographically, so keeping the first
    // strict maximum yields the lexicographically smallest argmax.
    do {
        long long val = objective(a, n, pairs, perm);
        if (val > best) {
            best = val;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best, Permutation(std::move(best_perm))};
}

double ml_threshold(int n, int k) {
    if (n < 2) throw InvalidParameters("ml_threshold: n must be at least 2");
    const double log_nfact = std::lgamma(n + 1.0);
    const double mean = static_cast<double>(k) / (n - 1) * n * k;
    return mean + 2.0 * std::sqrt(mean * log_nfact) + (2.0 / 3.0) * log_nfact;
}

DetectionOutcome ml_test(const Graph& g, int k) {
    auto [stat, perm] = ml_statistic_exact(g, k);
    DetectionOutcome out;
    out.method = DetectionMethod::max_likelihood;
    out.statistic = static_cast<double>(stat);
    out.threshold = ml_threshold(g.size(), k);
    out.decision = out.statistic >= out.threshold ? Decision::alternative_WS
                                                  : Decision::null_ER;
    out.permutation = std::move(perm);
    return out;
}

std::pair<long long, Permutation> ml_statistic_greedy(const Graph& g, int k,
                                                      int restarts,
                                                      std::uint64_t seed) {
    const int n = g.size();
    check_ml_params(n, k);
    if (restarts < 1) throw InvalidParameters("ml_statistic_greedy: restarts >= 1");

    const auto pairs = lattice_pairs(n, k);
    const auto a = dense_adjacency(g);

    long long best = -1;
    std::vector<int> best_perm;
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> perm =
            random_permutation(n, mix64(seed, static_cast<std::uint64_t>(r))).forward;
        long long val = objective(a, n, pairs, perm);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    std::swap(perm[i], perm[j]);
                    long long cand = objective(a, n, pairs, perm);
                    if (cand > val) {
                        val = cand;
                        improved = true;
                    } else {
                        std::swap(perm[i], perm[j]);
                    }
                }
            }
        }
        if (val > best) {
            best = val;
            best_perm = perm;
        }
    }
    return {best, Permutation(std::move(best_perm))};
}

double spectral_statistic(const Graph& g, std::uint64_t seed) {
    TopEigenOptions opts;
    opts.seed = seed;
    return top_eigenpairs(g, 2, opts).pairs[1].value;
}

DetectionOutcome spectral_test(const Graph& g, int k, double threshold_const,
                               std::uint64_t seed) {
    if (!(threshold_const > 0))
        throw InvalidParameters("spectral_test: threshold constant must be positive");
    DetectionOutcome out;
    out.method = DetectionMethod::spectral;
    out.statistic = spectral_statistic(g, seed);
    out.threshold = threshold_const *
                    std::max(std::sqrt(static_cast<double>(k)),
                             std::sqrt(std::log(static_cast<double>(g.size()))));
    out.decision = out.statistic >= out.threshold ? Decision::alternative_WS
                                                  : Decision::null_ER;
    return out;
}

double calibrate_spectral_threshold(int n, int k, double alpha, int trials,
                                    std::uint64_t seed, int workers) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidParameters("calibrate: alpha must lie in (0, 1]");
    if (trials < 100)
        throw InvalidParameters("calibrate: at least 100 trials required");

    std::vector<double> stats(trials);
    parallel_for(trials, workers, [&](int t) {
        Graph g = sample_er(n, static_cast<double>(k) / (n - 1),
                            mix64(seed, static_cast<std::uint64_t>(t)));
        stats[t] = spectral_statistic(g, mix64(seed, t, 0x73746174u));
    });

    int position = static_cast<int>(
        std::ceil((1.0 - alpha) * trials - 1e-9));
    if (position <= 0) return 0.0; // alpha = 1: degenerate zero quantile
    std::sort(stats.begin(), stats.end());
    int idx = std::min(position, trials - 1);
    double denom = std::max(std::sqrt(static_cast<double>(k)),
                            std::sqrt(std::log(static_cast<double>(n))));
    return stats[idx] / denom;
}

double kl_bernoulli(double p, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw DomainError("kl_bernoulli: reference probability must be in (0,1)");
    double s = 0.0;
    if (p > 0.0) s += p * std::log(p / q);
    if (p < 1.0) s += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    return s;
}

double kl_ws_er(const WsParams& params) {
    WsParams p(params.n, params.k, params.beta);
    const double beta = p.beta;
    if (beta == 1.0) return 0.0; // WS(beta=1) is exactly ER
    if (beta == 0.0) return std::numeric_limits<double>::infinity();

    const double n = p.n;
    const double k = p.k;
    const double rho = k / (n - 1.0); // ER edge probability
    const double q = beta * rho;
    const double p_in = 1.0 - beta * (1.0 - q);
    if (p_in >= 1.0 || q <= 0.0)
        return std::numeric_limits<double>::infinity();

    // Closed-form divergence; the grouping follows the exponential-family
    // algebra of the two likelihoods. Halved relative to a full-matrix
    // count, since each unordered pair carries one independent Bernoulli.
    const double t1 = std::log(beta) * n * k * (1.0 + beta - beta * rho);
    const double t2 = std::log((1.0 - q) / (1.0 - rho)) * n *
                      ((n - 1.0 - k) + (1.0 - beta) * beta * k * k / (n - 1.0));
    const double t3 = std::log(p_in / q) * n * k * p_in;
    return 0.5 * (t1 + t2 + t3);
}

std::string to_string(DetectionMethod m) {
    return m == DetectionMethod::max_likelihood ? "max_likelihood" : "spectral";
}

std::string to_string(Decision d) {
    return d == Decision::null_ER ? "null_ER" : "alternative_WS";
}

} // namespace smallworld
