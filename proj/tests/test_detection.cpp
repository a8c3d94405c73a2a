#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "smallworld/detection.hpp"
#include "smallworld/generator.hpp"
#include "smallworld/graph.hpp"
#include "smallworld/linalg.hpp"
#include "smallworld/rng.hpp"

using namespace smallworld;

namespace {

// Deliberately unoptimized reference: enumerate S_n, rebuild the permuted
// lattice each time, score with the generic inner product.
long long naive_ml_statistic(const Graph& g, int k) {
    const int n = g.size();
    Graph b = ring_lattice(n, k);
    std::vector<int> fwd(n);
    std::iota(fwd.begin(), fwd.end(), 0);
    long long best = -1;
    do {
        best = std::max(best, matrix_inner(permute(b, Permutation(fwd)), g));
    } while (std::next_permutation(fwd.begin(), fwd.end()));
    return best;
}

} // namespace

TEST_CASE("ml_statistic_exact on the un-permuted lattice") {
    auto [stat, perm] = ml_statistic_exact(ring_lattice(6, 2), 2);
    CHECK(stat == 12); // <B,B> = nk is the maximum since A has nk ones
    CHECK(perm.forward == Permutation::identity(6).forward);
}

TEST_CASE("ml_statistic_exact trivial and error cases") {
    CHECK(ml_statistic_exact(Graph(6), 2).first == 0);
    CHECK_THROWS_AS(ml_statistic_exact(Graph(11), 2), TooLarge);
    CHECK_THROWS_AS(ml_statistic_exact(Graph(8), 3), InvalidParameters);
}

TEST_CASE("ml_statistic_exact equals the naive enumerator") {
    for (int t = 0; t < 6; ++t) {
        Graph g = sample_er(7, 0.3, 100 + t);
        CHECK(ml_statistic_exact(g, 2).first == naive_ml_statistic(g, 2));
    }
}

TEST_CASE("ml statistic dominates the identity objective and is relabel-invariant") {
    for (int t = 0; t < 8; ++t) {
        Graph g = sample_er(7, 0.4, 300 + t);
        long long stat = ml_statistic_exact(g, 2).first;
        CHECK(stat >= matrix_inner(ring_lattice(7, 2), g));
        Graph relabeled = permute(g, random_permutation(7, 900 + t));
        CHECK(ml_statistic_exact(relabeled, 2).first == stat);
    }
}

TEST_CASE("ml_threshold formula") {
    // Frozen digits recomputed independently from the formula.
    CHECK(ml_threshold(10, 2) == doctest::Approx(30.90072088891703).epsilon(1e-13));
    // Independent in-test evaluation via lgamma.
    auto ref = [](int n, int k) {
        double lognf = std::lgamma(n + 1.0);
        double mean = static_cast<double>(k) / (n - 1) * n * k;
        return mean + 2 * std::sqrt(mean * lognf) + 2.0 / 3.0 * lognf;
    };
    for (int n : {5, 8, 10, 100, 5000})
        for (int k = 2; k < n - 1 && k <= 12; k += 2)
            CHECK(ml_threshold(n, k) == doctest::Approx(ref(n, k)).epsilon(1e-13));
    // Monotone in k for fixed n.
    CHECK(ml_threshold(10, 4) > ml_threshold(10, 2));
    CHECK(ml_threshold(10, 6) > ml_threshold(10, 4));
    CHECK_THROWS_AS(ml_threshold(1, 2), InvalidParameters);
}

TEST_CASE("ml_test decisions") {
    auto empty = ml_test(Graph(8), 2);
    CHECK(empty.statistic == 0.0);
    CHECK(empty.decision == Decision::null_ER);

    auto lattice = ml_test(ring_lattice(8, 2), 2);
    CHECK(lattice.statistic == 16.0);
    CHECK(lattice.threshold == doctest::Approx(ml_threshold(8, 2)));
    CHECK((lattice.decision == Decision::alternative_WS) ==
          (lattice.statistic >= lattice.threshold));
    CHECK(lattice.permutation.has_value());

    // False alarms on ER(8, 2/7): the threshold exceeds the largest
    // attainable statistic nk = 16 at this size, so the rate is 0 <= 1/n.
    int alarms = 0;
    for (int t = 0; t < 100; ++t) {
        Graph g = sample_er(8, 2.0 / 7, 4000 + t);
        alarms += ml_test(g, 2).decision == Decision::alternative_WS;
    }
    CHECK(alarms <= 100 / 8);
}

TEST_CASE("ml_statistic_greedy lower-bounds the exact statistic") {
    for (int t = 0; t < 5; ++t) {
        Graph g = sample_er(8, 0.4, 700 + t);
        auto [exact, p1] = ml_statistic_exact(g, 2);
        auto [greedy, p2] = ml_statistic_greedy(g, 2, 4, t);
        CHECK(greedy <= exact);
        CHECK(greedy >= 0);
    }
}

TEST_CASE("spectral_statistic against closed forms and the dense oracle") {
    Graph kn(20);
    for (int i = 0; i < 20; ++i)
        for (int j = i + 1; j < 20; ++j) kn.add_edge(i, j);
    CHECK(spectral_statistic(kn) == doctest::Approx(-1.0).epsilon(1e-7));

    CHECK(std::abs(spectral_statistic(ring_lattice(100, 10)) -
                   circulant_lambda2(100, 10)) <= 1e-7);

    Graph er = sample_er(512, 0.05, 9);
    double stat = spectral_statistic(er, 9);
    auto dense = dense_eig_oracle(er);
    CHECK(std::abs(stat - dense.values[1]) <= 1e-7);
    CHECK(stat <= 3.0 * std::sqrt(512 * 0.05)); // bulk-edge sanity band
}

TEST_CASE("spectral_test decision rule") {
    auto lattice = spectral_test(ring_lattice(1000, 50), 50, 2.5);
    CHECK(lattice.statistic ==
          doctest::Approx(circulant_lambda2(1000, 50)).epsilon(1e-7));
    CHECK(lattice.threshold == doctest::Approx(2.5 * std::sqrt(50.0)));
    CHECK(lattice.decision == Decision::alternative_WS);

    Graph kn(30);
    for (int i = 0; i < 30; ++i)
        for (int j = i + 1; j < 30; ++j) kn.add_edge(i, j);
    CHECK(spectral_test(kn, 4, 2.5).decision == Decision::null_ER);

    CHECK_THROWS_AS(spectral_test(kn, 4, 0.0), InvalidParameters);
}

TEST_CASE("calibrate_spectral_threshold quantile semantics") {
    CHECK(calibrate_spectral_threshold(100, 6, 1.0, 100, 1) == 0.0);
    CHECK_THROWS_AS(calibrate_spectral_threshold(100, 6, 0.05, 50, 1),
                    InvalidParameters);

    // Stability across seeds and honest type-I on fresh samples.
    const int n = 400, k = 20, trials = 200;
    const double alpha = 0.1;
    std::vector<double> consts;
    for (std::uint64_t seed : {1u, 2u, 3u})
        consts.push_back(calibrate_spectral_threshold(n, k, alpha, trials, seed));
    double lo = *std::min_element(consts.begin(), consts.end());
    double hi = *std::max_element(consts.begin(), consts.end());
    CHECK((hi - lo) / hi <= 0.10);

    int alarms = 0;
    const int fresh = 200;
    for (int t = 0; t < fresh; ++t) {
        Graph g = sample_er(n, static_cast<double>(k) / (n - 1), mix64(777, t));
        alarms += spectral_test(g, k, consts[0], mix64(778, t)).decision ==
                  Decision::alternative_WS;
    }
    // Two noise sources of comparable size: binomial noise in the fresh
    // alarm count, and quantile noise in the calibrated threshold (an
    // order statistic of `trials` draws, whose exceeded mass fluctuates
    // with std ~ sqrt(alpha(1-alpha)/trials)). Allow 3 combined sigmas.
    CHECK(static_cast<double>(alarms) / fresh <=
          alpha + 3 * std::sqrt(alpha * (1 - alpha) * (1.0 / fresh + 1.0 / trials)));
}

TEST_CASE("kl_ws_er equals the Bernoulli-sum oracle") {
    auto oracle = [](const WsParams& p) {
        double rho = static_cast<double>(p.k) / (p.n - 1);
        double lattice_pairs = p.n * p.k / 2.0;
        double total_pairs = p.n * (p.n - 1) / 2.0;
        return lattice_pairs * kl_bernoulli(p.p_in(), rho) +
               (total_pairs - lattice_pairs) * kl_bernoulli(p.q(), rho);
    };
    for (int n : {20, 50, 100, 500}) {
        for (int k = 2; k <= 16 && k < n - 1; k += 6) {
            for (double beta : {0.05, 0.3, 0.6, 0.9, 0.99}) {
                WsParams p(n, k, beta);
                double ref = oracle(p);
                CHECK(std::abs(kl_ws_er(p) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
            }
        }
    }
}

TEST_CASE("kl_ws_er endpoints and monotonicity") {
    CHECK(kl_ws_er(WsParams(100, 10, 1.0)) == 0.0);
    CHECK(std::isinf(kl_ws_er(WsParams(100, 10, 0.0))));
    // Divergence from the null grows as beta moves away from 1.
    double prev = 0.0;
    for (double beta : {0.99, 0.95, 0.9, 0.8}) {
        double v = kl_ws_er(WsParams(100, 10, beta));
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("kl_bernoulli basics") {
    CHECK(kl_bernoulli(0.3, 0.3) == doctest::Approx(0.0));
    CHECK(kl_bernoulli(0.7, 0.2) > 0.0);
    CHECK(kl_bernoulli(1.0, 0.5) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(kl_bernoulli(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(kl_bernoulli(0.5, 1.0), DomainError);
}
