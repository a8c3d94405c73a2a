#include "smallworld/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "smallworld/detection.hpp"
#include "smallworld/generator.hpp"
#include "smallworld/parallel.hpp"
#include "smallworld/reconstruction.hpp"
#include "smallworld/rng.hpp"

namespace smallworld {

std::string to_string(Region r) {
    switch (r) {
        case Region::impossible: return "impossible";
        case Region::hard: return "hard";
        case Region::easy: return "easy";
        case Region::reconstructable: return "reconstructable";
        case Region::reconstructable_prime: return "reconstructable_prime";
        case Region::boundary: return "boundary";
    }
    return "unknown";
}

Region region_of(double x, double y) {
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
        throw InvalidParameters("region_of: need 0 < x < 1 and 0 < y < 1");
    constexpr double eps = 1e-9;

    const double impossible_bound = std::min(0.5, x); // y above: impossible
    const double hard_bound = x / 2.0;                // y above: at best hard
    const double recon_bound = impossible_bound / 2.0; // y below: reconstructable
    const bool in_prime_band = x > 7.0 / 8.0 + eps;
    const double prime_bound = 4.0 * x - 3.5; // Lemma-4 extension, large k only

    if (std::abs(y - impossible_bound) < eps || std::abs(y - hard_bound) < eps ||
        std::abs(y - recon_bound) < eps ||
        (in_prime_band && std::abs(y - prime_bound) < eps))
        return Region::boundary;

    if (y > impossible_bound) return Region::impossible;
    if (y < recon_bound) return Region::reconstructable;
    if (in_prime_band && y < prime_bound) return Region::reconstructable_prime;
    if (y > hard_bound) return Region::hard;
    return Region::easy;
}

std::string to_string(SweepMethod m) {
    switch (m) {
        case SweepMethod::spectral_test: return "spectral_test";
        case SweepMethod::ml_test: return "ml_test";
        case SweepMethod::correlation: return "correlation";
        case SweepMethod::spectral_ordering: return "spectral_ordering";
    }
    return "unknown";
}

SweepMethod sweep_method_from_string(const std::string& s) {
    if (s == "spectral_test") return SweepMethod::spectral_test;
    if (s == "ml_test") return SweepMethod::ml_test;
    if (s == "correlation") return SweepMethod::correlation;
    if (s == "spectral_ordering") return SweepMethod::spectral_ordering;
    throw InvalidParameters("unknown sweep method: " + s);
}

void SweepConfig::validate() const {
    if (n < 3) throw InvalidParameters("sweep: n must be at least 3");
    if (trials < 1) throw InvalidParameters("sweep: trials must be >= 1");
    if (x_grid.empty() || y_grid.empty())
        throw InvalidParameters("sweep: x_grid and y_grid must be nonempty");
    if (methods.empty()) throw InvalidParameters("sweep: no methods selected");
    for (double x : x_grid)
        if (!(x > 0.0 && x < 1.0))
            throw InvalidParameters("sweep: x grid values must lie in (0,1)");
    for (double y : y_grid)
        if (!(y > 0.0 && y < 1.0))
            throw InvalidParameters("sweep: y grid values must lie in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidParameters("sweep: alpha must lie in (0,1)");
    for (SweepMethod m : methods)
        if (m == SweepMethod::ml_test && n > 10)
            throw InvalidParameters("sweep: ml_test allowed only for n <= 10");
}

int grid_k(int n, double x) {
    double raw = std::pow(static_cast<double>(n), x);
    int k = 2 * static_cast<int>(std::llround(raw / 2.0));
    return std::max(k, 2);
}

double grid_beta(int n, double y) {
    return std::clamp(1.0 - std::pow(static_cast<double>(n), -y), 0.0, 1.0);
}

namespace {

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    SweepConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParameters("config: expected key=value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "n") cfg.n = std::stoi(val);
        else if (key == "x_grid") cfg.x_grid = parse_double_list(val);
        else if (key == "y_grid") cfg.y_grid = parse_double_list(val);
        else if (key == "trials") cfg.trials = std::stoi(val);
        else if (key == "alpha") cfg.alpha = std::stod(val);
        else if (key == "base_seed") cfg.base_seed = std::stoull(val);
        else if (key == "methods") {
            cfg.methods.clear();
            std::stringstream ss(val);
            std::string m;
            while (std::getline(ss, m, ','))
                cfg.methods.push_back(sweep_method_from_string(trim(m)));
        } else {
            throw InvalidParameters("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

namespace {

std::uint64_t cell_seed(std::uint64_t base, int xi, int yi) {
    return mix64(base, static_cast<std::uint64_t>(xi),
                 static_cast<std::uint64_t>(yi));
}

CellResult run_cell(const SweepConfig& cfg, int xi, int yi, SweepMethod method) {
    const auto t0 = std::chrono::steady_clock::now();
    CellResult cell;
    cell.x = cfg.x_grid[xi];
    cell.y = cfg.y_grid[yi];
    cell.n = cfg.n;
    cell.k = grid_k(cfg.n, cell.x);
    cell.beta = grid_beta(cfg.n, cell.y);
    cell.method = method;
    cell.trials = cfg.trials;
    cell.seed = cell_seed(cfg.base_seed, xi, yi);

    try {
        WsParams params(cfg.n, cell.k, cell.beta);
        const bool detection = method == SweepMethod::spectral_test ||
                               method == SweepMethod::ml_test;
        if (detection) {
            double spectral_const = kDefaultSpectralConst;
            if (method == SweepMethod::spectral_test) {
                // Calibration reuses the trial count, floored at the
                // calibrator's minimum.
                spectral_const = calibrate_spectral_threshold(
                    cfg.n, cell.k, cfg.alpha, std::max(cfg.trials, 100),
                    mix64(cell.seed, 0x63616cu));
            }
            int ws_hits = 0, er_hits = 0;
            for (int t = 0; t < cfg.trials; ++t) {
                std::uint64_t ws_seed = mix64(cell.seed, 2 * t);
                std::uint64_t er_seed = mix64(cell.seed, 2 * t + 1);
                SampleSpec spec{params, ws_seed, PermutationMode::random, {}};
                Graph ws = sample_ws(spec).first;
                Graph er = sample_er(cfg.n, cell.k / (cfg.n - 1.0), er_seed);
                DetectionOutcome ws_out, er_out;
                if (method == SweepMethod::spectral_test) {
                    ws_out = spectral_test(ws, cell.k, spectral_const, ws_seed);
                    er_out = spectral_test(er, cell.k, spectral_const, er_seed);
                } else {
                    ws_out = ml_test(ws, cell.k);
                    er_out = ml_test(er, cell.k);
                }
                ws_hits += ws_out.decision == Decision::alternative_WS;
                er_hits += er_out.decision == Decision::alternative_WS;
            }
            cell.metrics.push_back(
                {"power", static_cast<double>(ws_hits) / cfg.trials});
            cell.metrics.push_back(
                {"type1", static_cast<double>(er_hits) / cfg.trials});
        } else {
            double sum = 0.0, worst = 0.0;
            for (int t = 0; t < cfg.trials; ++t) {
                std::uint64_t ws_seed = mix64(cell.seed, 2 * t);
                SampleSpec spec{params, ws_seed, PermutationMode::random, {}};
                auto [ws, pi] = sample_ws(spec);
                NeighborhoodEstimate est =
                    method == SweepMethod::correlation
                        ? correlation_threshold(ws, cell.k)
                        : spectral_order(ws, cell.k, nullptr, ws_seed);
                double err = neighborhood_error(est, {pi, cell.k});
                sum += err;
                worst = std::max(worst, err);
            }
            cell.metrics.push_back({"mean_error", sum / cfg.trials});
            cell.metrics.push_back({"max_error", worst});
        }
    } catch (const std::exception&) {
        cell.metrics.clear();
        cell.metrics.push_back({"failed", 1.0});
    }
    cell.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cell;
}

} // namespace

std::vector<CellResult> run_sweep(const SweepConfig& cfg, int workers) {
    cfg.validate();
    struct Task {
        int xi, yi;
        SweepMethod method;
    };
    std::vector<Task> tasks;
    for (std::size_t xi = 0; xi < cfg.x_grid.size(); ++xi)
        for (std::size_t yi = 0; yi < cfg.y_grid.size(); ++yi)
            for (SweepMethod m : cfg.methods)
                tasks.push_back({static_cast<int>(xi), static_cast<int>(yi), m});

    std::vector<CellResult> results(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), workers, [&](int t) {
        const Task& task = tasks[t];
        results[t] = run_cell(cfg, task.xi, task.yi, task.method);
        std::fprintf(stderr, "sweep: cell x=%g y=%g method=%s done (%.1fs)\n",
                     cfg.x_grid[task.xi], cfg.y_grid[task.yi],
                     to_string(task.method).c_str(), results[t].wall_time);
    });
    return results;
}

void write_sweep_csv(const std::vector<CellResult>& results, std::ostream& out) {
    out << "x,y,n,k,beta,method,metric,value,trials,seed\n";
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return std::string(buf);
    };
    for (const CellResult& cell : results) {
        for (const CellMetric& m : cell.metrics) {
            out << fmt(cell.x) << ',' << fmt(cell.y) << ',' << cell.n << ','
                << cell.k << ',' << fmt(cell.beta) << ',' << to_string(cell.method)
                << ',' << m.metric << ',' << fmt(m.value) << ',' << cell.trials
                << ',' << cell.seed << '\n';
        }
    }
}

} // namespace smallworld
