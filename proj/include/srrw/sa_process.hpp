#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "srrw/chain.hpp"
#include "srrw/graph.hpp"
#include "srrw/schedule.hpp"

namespace srrw {

// Stochastic-approximation view of the walk. The empirical measure is held
// as visit counts c plus their total t, so the update
//
//   x_{n+1} = x_n + gamma (delta_{X_{n+1}} - x_n),   gamma = 1 / (t + 1),
//
// is exactly the count increment c[X] += 1, t += 1. This matches the affine
// recursion with step size 1/(n + 2) when the prior carries unit mass; fake
// visit priors carry more mass and simply start the step-size clock later.
struct EmpiricalMeasure {
    Eigen::VectorXd counts;
    double total = 0.0;

    Eigen::VectorXd x() const { return counts / total; }
};

enum class InitMode {
    UniformFake, // one fake visit per node: c = 1, x0 uniform
    DegreeFake,  // c_i = deg(i), x0 proportional to degree
    Explicit,    // c = nu with unit total mass
};

// Builds the initial measure. DegreeFake requires the graph; Explicit
// requires an interior probability vector nu.
EmpiricalMeasure init_measure(int node_count, InitMode mode, const Graph* g = nullptr,
                              const Eigen::VectorXd* nu = nullptr);

// Doubly infinite family of shrinking truncation sets
//   K_kappa = { x : x_i in [1/(kappa + M), 1 - 1/(kappa + M)] for all i },
// increasing in kappa and exhausting the open simplex.
struct TruncationFamily {
    double M = 0.0;

    explicit TruncationFamily(double m);
    double lower(long long kappa) const { return 1.0 / (static_cast<double>(kappa) + M); }
    bool contains(const Eigen::VectorXd& x, long long kappa) const;
};

enum class RestartPolicy {
    ReuseInitial,      // truncation resets the measure to x0
    DirichletResample, // fresh uniform-simplex draw, projected into K_0
};

struct SimConfig {
    AlphaSchedule schedule = AlphaSchedule::constant(1.0);
    long long n_max = 0;
    // Ascending step counts at which the record samples the run; the horizon
    // itself is always included.
    std::vector<long long> checkpoints;
    EmpiricalMeasure init;
    int start_node = -1; // -1 draws the start uniformly from the run's RNG
    bool truncation = false;
    double truncation_M = 0.0;
    RestartPolicy restart = RestartPolicy::ReuseInitial;
    Eigen::VectorXd g; // test function for the running estimators
    bool prior_free_tvd = false;
};

struct RunRecord {
    std::vector<long long> checkpoints;
    std::vector<double> tvd;     // per checkpoint
    std::vector<double> psi;     // per checkpoint; NaN before the first sample
    std::vector<double> psi_hat; // per checkpoint; NaN before the first sample
    Eigen::VectorXd final_x;
    long long truncations = 0;
    std::uint64_t seed = 0;
};

struct EnsembleRecord {
    std::vector<long long> checkpoints;
    std::vector<double> mean_tvd;
    std::vector<double> mse;      // of psi against g^T mu
    std::vector<double> psi_mean;
    std::vector<double> psi_hat_mean;
    Eigen::MatrixXd final_xs;     // one row per run
    long long total_truncations = 0;
    long long runs_truncated = 0;
    double truth_psi = 0.0; // g^T mu
};

// Geometric checkpoint grid: distinct rounded powers of ratio up to and
// including n_max (plus n = 0).
std::vector<long long> geometric_checkpoints(long long n_max, double ratio = 1.2);

// Simulates one walk for cfg.n_max steps. Deterministic for a given seed.
// With truncation enabled, a half step leaving K_kappa resets the measure
// (and the walker, which returns to its starting node), rewinds the step
// size clock by the length of the discarded stretch plus one, and grows
// kappa; the running estimators keep accumulating across restarts.
RunRecord run(const ReversibleKernel& k, const SimConfig& cfg, std::uint64_t seed);

// K independent runs with per-run seeds split from base_seed by run index.
// Aggregates (and the record rows) are reduced in run-index order, so the
// result is byte-identical for any worker count.
EnsembleRecord run_ensemble(const ReversibleKernel& k, const SimConfig& cfg, int K,
                            std::uint64_t base_seed, int workers = 0);

} // namespace srrw
