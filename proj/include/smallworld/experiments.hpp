#ifndef SMALLWORLD_EXPERIMENTS_HPP
#define SMALLWORLD_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "smallworld/graph.hpp"

namespace smallworld {

enum class Region {
    impossible,
    hard,
    easy,
    reconstructable,
    reconstructable_prime,
    boundary
};

std::string to_string(Region r);

/// Exponent-level region classification for (x, y) = (log k / log n,
/// -log(1-beta) / log n), polylog factors dropped:
///   impossible        y > min(1/2, x)
///   hard              x/2 < y <= min(1/2, x)
///   easy              min(1/2, x)/2 <= y <= x/2
///   reconstructable   y < min(1/2, x)/2
///   reconstructable'  x > 7/8 and y < 4x - 3.5 (where not already
///                     reconstructable)
/// Points within 1e-9 of a boundary are labeled boundary.
Region region_of(double x, double y);

enum class SweepMethod { spectral_test, ml_test, correlation, spectral_ordering };

std::string to_string(SweepMethod m);
SweepMethod sweep_method_from_string(const std::string& s);

struct SweepConfig {
    int n = 0;
    std::vector<double> x_grid; // k = round(n^x), forced even, >= 2
    std::vector<double> y_grid; // beta = 1 - n^-y, clamped to [0, 1]
    int trials = 1;
    std::vector<SweepMethod> methods;
    double alpha = 0.05; // spectral-test calibration level
    std::uint64_t base_seed = 0;

    void validate() const;
};

/// Parses a key=value config file (n, x_grid, y_grid, trials, methods,
/// alpha, base_seed; lists comma separated, '#' comments).
SweepConfig load_sweep_config(const std::string& path);

struct CellMetric {
    std::string metric; // power | type1 | mean_error | max_error | failed
    double value = 0.0;
};

struct CellResult {
    double x = 0.0, y = 0.0;
    int n = 0, k = 0;
    double beta = 0.0;
    SweepMethod method;
    std::vector<CellMetric> metrics;
    int trials = 0;
    std::uint64_t seed = 0;   // cell seed, derived from base_seed
    double wall_time = 0.0;   // seconds; not part of the CSV contract
};

/// Runs the Monte Carlo sweep. Cells may execute on several workers;
/// the result (and the emitted CSV) is a pure function of cfg.
std::vector<CellResult> run_sweep(const SweepConfig& cfg, int workers = 1);

/// CSV schema: "x,y,n,k,beta,method,metric,value,trials,seed".
void write_sweep_csv(const std::vector<CellResult>& results, std::ostream& out);

/// Effective k for a grid coordinate: round(n^x) to the nearest even
/// integer, at least 2.
int grid_k(int n, double x);
/// Effective beta: 1 - n^-y clamped to [0, 1].
double grid_beta(int n, double y);

} // namespace smallworld

#endif
