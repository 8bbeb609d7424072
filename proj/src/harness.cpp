#include "srrw/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "srrw/asymptotics.hpp"
#include "srrw/csv.hpp"
#include "srrw/errors.hpp"
#include "srrw/ode.hpp"
#include "srrw/sa_process.hpp"

namespace srrw {

std::string resolve_out_dir(const std::string& flag_value, const ExperimentConfig& cfg) {
    std::string dir = flag_value;
    if (dir.empty()) dir = cfg.out;
    if (dir.empty()) {
        if (const char* env = std::getenv("SRRW_OUT_DIR"); env != nullptr && *env != '\0')
            dir = env;
    }
    if (dir.empty()) dir = ".";
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ParseError("cannot create output directory: " + dir);
    return dir;
}

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

} // namespace

void cmd_spectrum(const ExperimentConfig& cfg, const std::string& out_dir,
                  std::ostream& log) {
    const Materialized m = materialize(cfg);
    const Spectrum s = compute_spectrum(m.kernel);
    write_kernel_csv(m.kernel, join(out_dir, "kernel.csv"), join(out_dir, "mu.csv"));
    write_spectrum_csv(s, join(out_dir, "spectrum_lambda.csv"),
                       join(out_dir, "spectrum_u.csv"), join(out_dir, "spectrum_v.csv"));
    log << "SLEM " << format_double(slem(s)) << '\n';
}

void cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir, int workers,
                  std::ostream& log) {
    const Materialized m = materialize(cfg);
    CsvWriter combined(join(out_dir, "metrics.csv"));
    combined.row("n", "alpha_label", "mean_tvd", "mse", "psi_mean", "psi_hat_mean");
    for (std::size_t idx = 0; idx < cfg.alphas.size(); ++idx) {
        const AlphaSpec& spec = cfg.alphas[idx];
        const SimConfig sc = sim_config_of(cfg, m, spec);
        const EnsembleRecord er = run_ensemble(m.kernel, sc, cfg.K, cfg.seed, workers);
        CsvWriter single(join(out_dir, "metrics_" + std::to_string(idx) + ".csv"));
        single.row("n", "alpha_label", "mean_tvd", "mse", "psi_mean", "psi_hat_mean");
        const std::string label = spec.label();
        for (std::size_t c = 0; c < er.checkpoints.size(); ++c) {
            single.row(er.checkpoints[c], label, er.mean_tvd[c], er.mse[c], er.psi_mean[c],
                       er.psi_hat_mean[c]);
            combined.row(er.checkpoints[c], label, er.mean_tvd[c], er.mse[c],
                         er.psi_mean[c], er.psi_hat_mean[c]);
        }
        log << "alpha " << label << ": " << er.total_truncations << " truncations across "
            << er.runs_truncated << " of " << cfg.K << " runs\n";
    }
}

void cmd_ode(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log) {
    const Materialized m = materialize(cfg);
    const int n = m.kernel.node_count();
    const Eigen::VectorXd x0 = m.init.counts / m.init.total;
    for (std::size_t idx = 0; idx < cfg.alphas.size(); ++idx) {
        const AlphaSpec& spec = cfg.alphas[idx];
        if (spec.kind != AlphaSpec::Kind::Constant)
            throw DomainError("ode: schedule tokens must be constant alphas");
        const OdeTrajectory traj = integrate(m.kernel, x0, spec.alpha, cfg.ode_T, cfg.ode_dt);
        CsvWriter out(join(out_dir, "trajectory_" + std::to_string(idx) + ".csv"));
        std::vector<std::string> header{"t"};
        for (int i = 0; i < n; ++i) header.push_back("x_" + std::to_string(i));
        header.push_back("w");
        std::string head;
        for (std::size_t h = 0; h < header.size(); ++h) head += (h ? "," : "") + header[h];
        out.row(head);
        for (std::size_t r = 0; r < traj.t.size(); ++r) {
            std::string line = format_double(traj.t[r]);
            for (int i = 0; i < n; ++i) line += "," + format_double(traj.x[r][i]);
            line += "," + format_double(traj.w[r]);
            out.row(line);
        }
        const double final_tvd = 0.5 * (traj.x.back() - m.kernel.mu()).cwiseAbs().sum();
        log << "alpha " << spec.label() << ": final tvd " << format_double(final_tvd)
            << '\n';
    }
}

void cmd_analyze(const ExperimentConfig& cfg, const std::string& out_dir,
                 std::ostream& log) {
    const Materialized m = materialize(cfg);
    const Spectrum s = compute_spectrum(m.kernel);
    const std::string g_id =
        cfg.g == ExperimentConfig::TestFunction::Degree ? "degree" : cfg.g_path;

    CsvWriter analysis(join(out_dir, "analysis.csv"));
    analysis.row("alpha", "g_id", "variance", "bound", "ratio");
    std::vector<double> alphas;
    std::vector<AsymptoticCovariance> covs;
    for (const AlphaSpec& spec : cfg.alphas) {
        const double alpha = spec.kind == AlphaSpec::Kind::Constant
                                 ? spec.alpha
                                 : AlphaSchedule::make(spec, m.kernel.node_count()).cap();
        const AsymptoticCovariance V = covariance_V(s, alpha);
        const double variance = sampling_variance(m.g, V);
        const auto [bound, ratio] = reduction_bound(m.g, s, alpha);
        analysis.row(alpha, g_id, variance, bound, ratio);
        alphas.push_back(alpha);
        covs.push_back(V);
    }

    CsvWriter loewner(join(out_dir, "loewner.csv"));
    loewner.row("alpha_a", "alpha_b", "gap");
    for (std::size_t i = 0; i + 1 < covs.size(); ++i) {
        const double gap = loewner_gap(covs[i + 1].matrix, covs[i].matrix);
        loewner.row(alphas[i], alphas[i + 1], gap);
    }
    log << "analysis rows " << covs.size() << '\n';
}

} // namespace srrw
