#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "srrw/chain.hpp"
#include "srrw/graph.hpp"
#include "srrw/sa_process.hpp"
#include "srrw/schedule.hpp"

namespace srrw {

// Flat key = value experiment description. One key per line, '#' starts a
// comment line, blank lines are skipped, later occurrences of a key win.
// parse -> serialize -> parse is the identity; serialize_config emits every
// key in a fixed order with canonical value spellings.
//
// Keys:
//   graph       edge list path, or er:N,M for a generated graph
//   graph_seed  generator seed (er graphs only)
//   lcc         on | off   reduce the input graph to its largest component
//   kernel      srw | mhrw | file:KERNEL.csv,MU.csv
//   target      uniform | degree | file:PATH   (mhrw target distribution)
//   alpha       whitespace-separated schedule tokens, one run sweep per token
//   n_max       horizon (steps)
//   checkpoints geometric:RATIO | list:N0,N1,...
//   K           ensemble size
//   seed        base seed; run r uses split_seed(seed, r)
//   truncation  off | M   (positive scale of the shrinking-set family)
//   restart     reuse | dirichlet   measure reseed after a truncation
//   init        uniform | degree | file:PATH   initial fake-visit counts
//   g           degree | file:PATH   test function for the estimators
//   start_node  random | node id
//   out         output directory ("" = SRRW_OUT_DIR or the working directory)
//   ode_T       mean-field integration horizon
//   ode_dt      mean-field step
//   tvd         with-prior | visits-only   empirical measure used for TVD
struct ExperimentConfig {
    enum class GraphSource { File, ErdosRenyi };
    enum class KernelKind { Srw, Mhrw, File };
    enum class TargetKind { Uniform, Degree, File };
    enum class InitKind { Uniform, Degree, File };
    enum class TestFunction { Degree, File };
    enum class CheckpointKind { Geometric, List };

    GraphSource graph_source = GraphSource::File;
    std::string graph_path;
    int er_n = 0;
    std::int64_t er_m = 0;
    std::uint64_t graph_seed = 1;
    bool lcc = true;

    KernelKind kernel = KernelKind::Srw;
    std::string kernel_path;
    std::string kernel_mu_path;
    TargetKind target = TargetKind::Uniform;
    std::string target_path;

    std::vector<AlphaSpec> alphas{AlphaSpec{}};
    long long n_max = 10000;
    CheckpointKind checkpoint_kind = CheckpointKind::Geometric;
    double checkpoint_ratio = 1.2;
    std::vector<long long> checkpoint_list;
    int K = 1;
    std::uint64_t seed = 0;

    bool truncation = false;
    double truncation_M = 0.0;
    RestartPolicy restart = RestartPolicy::ReuseInitial;
    InitKind init = InitKind::Uniform;
    std::string init_path;
    TestFunction g = TestFunction::Degree;
    std::string g_path;
    int start_node = -1; // -1 = drawn uniformly per run

    std::string out;
    double ode_T = 200.0;
    double ode_dt = 0.01;
    bool prior_free_tvd = false;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

// Experiment inputs materialized from a config: the graph (absent when the
// kernel comes from a file), the kernel, the test function, and the initial
// measure. File-backed vectors are validated against the kernel size.
struct Materialized {
    std::optional<Graph> graph;
    ReversibleKernel kernel;
    Eigen::VectorXd g;
    EmpiricalMeasure init;
};

Materialized materialize(const ExperimentConfig& cfg);

// Checkpoint sequence for the configured horizon.
std::vector<long long> checkpoints_of(const ExperimentConfig& cfg);

// Per-run simulation settings for one schedule token. Binds the schedule to
// the kernel size; DomainError surfaces invalid schedule parameters.
SimConfig sim_config_of(const ExperimentConfig& cfg, const Materialized& m,
                        const AlphaSpec& spec);

} // namespace srrw
