#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "srrw/srrw.h"

namespace {

void print_line(const char* line, void*) { std::printf("%s\n", line); }

struct CheckCounter {
    int failures = 0;
};

void print_check(const char* id, const char* name, int pass, const char* detail,
                 double seconds, void* user) {
    auto* counter = static_cast<CheckCounter*>(user);
    if (pass == 0) ++counter->failures;
    std::printf("%-4s %-34s %s  (%.2fs)  %s\n", id, name, pass ? "PASS" : "FAIL", seconds,
                detail);
    std::fflush(stdout);
}

struct CommonArgs {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out,
                    "output directory (default: the config's out key, then SRRW_OUT_DIR, "
                    "then the working directory)");
    args.seed_opt = cmd->add_option("--seed", args.seed, "override the config base seed");
}

enum class Command { Spectrum, Simulate, Ode, Analyze };

int run_with_config(Command cmd, const CommonArgs& args, int workers) {
    srrw_config* cfg = srrw_config_parse_file(args.config.c_str());
    if (cfg == nullptr) {
        std::fprintf(stderr, "error: %s\n", srrw_last_error());
        return SRRW_CONFIG_ERROR;
    }
    if (args.seed_opt != nullptr && args.seed_opt->count() > 0)
        srrw_config_set_seed(cfg, args.seed);

    char dir[4096];
    int status = srrw_resolve_out_dir(cfg, args.out.c_str(), dir, sizeof dir);
    if (status == SRRW_OK) {
        switch (cmd) {
            case Command::Spectrum:
                status = srrw_cmd_spectrum(cfg, dir, print_line, nullptr);
                break;
            case Command::Simulate:
                status = srrw_cmd_simulate(cfg, dir, workers, print_line, nullptr);
                break;
            case Command::Ode:
                status = srrw_cmd_ode(cfg, dir, print_line, nullptr);
                break;
            case Command::Analyze:
                status = srrw_cmd_analyze(cfg, dir, print_line, nullptr);
                break;
        }
    }
    srrw_config_free(cfg);
    if (status != SRRW_OK) std::fprintf(stderr, "error: %s\n", srrw_last_error());
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-repellent random walk toolkit"};
    app.require_subcommand(1);

    CommonArgs spectrum_args, simulate_args, ode_args, analyze_args;
    int workers = 0;
    bool quick = false;
    bool inject = false;

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "dump the base kernel and its spectrum, print the SLEM");
    add_common(spectrum, spectrum_args);

    CLI::App* simulate =
        app.add_subcommand("simulate", "run the ensemble per alpha token, emit metrics CSVs");
    add_common(simulate, simulate_args);
    simulate->add_option("--workers", workers,
                         "worker threads (0 = hardware concurrency, capped by K)");

    CLI::App* ode = app.add_subcommand(
        "ode", "integrate the mean-field flow per alpha token, emit trajectory CSVs");
    add_common(ode, ode_args);

    CLI::App* analyze = app.add_subcommand(
        "analyze", "asymptotic variance, reduction bound, and covariance ordering tables");
    add_common(analyze, analyze_args);

    CLI::App* validate = app.add_subcommand("validate", "run the built-in validation suite");
    validate->add_flag("--quick", quick, "reduced ensembles, finishes in well under two minutes");
    validate->add_flag("--inject-dbe-break", inject)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : SRRW_CONFIG_ERROR;
    }

    if (spectrum->parsed()) return run_with_config(Command::Spectrum, spectrum_args, 0);
    if (simulate->parsed()) return run_with_config(Command::Simulate, simulate_args, workers);
    if (ode->parsed()) return run_with_config(Command::Ode, ode_args, 0);
    if (analyze->parsed()) return run_with_config(Command::Analyze, analyze_args, 0);

    CheckCounter counter;
    const int status = srrw_validate(quick ? 1 : 0, inject ? 1 : 0, print_check, &counter);
    if (status == SRRW_OK)
        std::printf("all checks passed\n");
    else if (status == SRRW_VALIDATION_FAIL)
        std::printf("%d check(s) failed\n", counter.failures);
    else
        std::fprintf(stderr, "error: %s\n", srrw_last_error());
    return status;
}
