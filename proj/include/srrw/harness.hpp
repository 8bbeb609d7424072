#pragma once

#include <iosfwd>
#include <string>

#include "srrw/config.hpp"

namespace srrw {

// Output directory: explicit flag value, else the config's out key, else the
// SRRW_OUT_DIR environment variable, else the working directory. Created when
// missing.
std::string resolve_out_dir(const std::string& flag_value, const ExperimentConfig& cfg);

// Builds the kernel, dumps it (kernel.csv, mu.csv) with its spectrum
// (spectrum_lambda.csv, spectrum_u.csv, spectrum_v.csv), and logs the SLEM.
void cmd_spectrum(const ExperimentConfig& cfg, const std::string& out_dir,
                  std::ostream& log);

// Runs the ensemble once per schedule token. Emits metrics_<idx>.csv per
// token plus a combined metrics.csv, schema
// n,alpha_label,mean_tvd,mse,psi_mean,psi_hat_mean, and logs truncation
// statistics. Run r of token idx is seeded split_seed(seed, r), so results
// are identical for any worker count.
void cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir, int workers,
                  std::ostream& log);

// Integrates the mean-field flow from the configured initial measure for
// each schedule token (constant tokens only) and emits trajectory_<idx>.csv,
// schema t,x_0..x_{N-1},w.
void cmd_ode(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log);

// Emits analysis.csv (alpha,g_id,variance,bound,ratio) over the schedule
// tokens (non-constant tokens contribute their saturation value) and
// loewner.csv (alpha_a,alpha_b,gap) over consecutive token pairs.
void cmd_analyze(const ExperimentConfig& cfg, const std::string& out_dir,
                 std::ostream& log);

} // namespace srrw
