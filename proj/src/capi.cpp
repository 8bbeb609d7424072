#include "srrw/srrw.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "srrw/chain.hpp"
#include "srrw/config.hpp"
#include "srrw/errors.hpp"
#include "srrw/harness.hpp"
#include "srrw/validate.hpp"

struct srrw_config {
    srrw::ExperimentConfig cfg;
};

struct srrw_chain {
    srrw::ReversibleKernel kernel;
};

namespace {

thread_local std::string t_last_error = "no error";

int fail(int code, const char* what) {
    t_last_error = what;
    return code;
}

// Maps the library's exception taxonomy onto status codes; parse and domain
// problems are both configuration errors from the caller's point of view.
template <typename F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const srrw::ParseError& e) {
        return fail(SRRW_CONFIG_ERROR, e.what());
    } catch (const srrw::DomainError& e) {
        return fail(SRRW_CONFIG_ERROR, e.what());
    } catch (const srrw::NumericError& e) {
        return fail(SRRW_NUMERIC_ERROR, e.what());
    } catch (const std::exception& e) {
        return fail(SRRW_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(SRRW_INTERNAL_ERROR, "unknown failure");
    }
}

template <typename F>
auto guarded_ptr(F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return nullptr;
    } catch (...) {
        t_last_error = "unknown failure";
        return nullptr;
    }
}

void deliver_lines(const std::string& text, srrw_log_fn log, void* user) {
    if (log == nullptr) return;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) log(line.c_str(), user);
}

template <typename F>
int run_command(srrw_log_fn log, void* user, F&& body) {
    std::ostringstream captured;
    const int status = guarded([&] {
        body(captured);
        return SRRW_OK;
    });
    deliver_lines(captured.str(), log, user);
    return status;
}

} // namespace

extern "C" {

const char* srrw_last_error(void) { return t_last_error.c_str(); }

srrw_config* srrw_config_parse_file(const char* path) {
    if (path == nullptr) {
        t_last_error = "config path is null";
        return nullptr;
    }
    return guarded_ptr([&]() -> srrw_config* {
        return new srrw_config{srrw::parse_config_file(path)};
    });
}

srrw_config* srrw_config_parse_text(const char* text) {
    if (text == nullptr) {
        t_last_error = "config text is null";
        return nullptr;
    }
    return guarded_ptr([&]() -> srrw_config* {
        return new srrw_config{srrw::parse_config_text(text)};
    });
}

void srrw_config_free(srrw_config* cfg) { delete cfg; }

void srrw_config_set_seed(srrw_config* cfg, uint64_t seed) {
    if (cfg != nullptr) cfg->cfg.seed = seed;
}

char* srrw_config_serialize(const srrw_config* cfg) {
    if (cfg == nullptr) {
        t_last_error = "config handle is null";
        return nullptr;
    }
    return guarded_ptr([&]() -> char* {
        const std::string text = srrw::serialize_config(cfg->cfg);
        char* out = static_cast<char*>(std::malloc(text.size() + 1));
        if (out == nullptr) {
            t_last_error = "out of memory";
            return nullptr;
        }
        std::memcpy(out, text.c_str(), text.size() + 1);
        return out;
    });
}

void srrw_string_free(char* s) { std::free(s); }

int srrw_resolve_out_dir(const srrw_config* cfg, const char* flag_value, char* buf,
                         size_t cap) {
    if (cfg == nullptr || buf == nullptr) return fail(SRRW_CONFIG_ERROR, "null argument");
    return guarded([&]() -> int {
        const std::string dir =
            srrw::resolve_out_dir(flag_value == nullptr ? "" : flag_value, cfg->cfg);
        if (dir.size() + 1 > cap)
            return fail(SRRW_CONFIG_ERROR, "output directory buffer too small");
        std::memcpy(buf, dir.c_str(), dir.size() + 1);
        return SRRW_OK;
    });
}

srrw_chain* srrw_chain_from_config(const srrw_config* cfg) {
    if (cfg == nullptr) {
        t_last_error = "config handle is null";
        return nullptr;
    }
    return guarded_ptr([&]() -> srrw_chain* {
        return new srrw_chain{srrw::materialize(cfg->cfg).kernel};
    });
}

void srrw_chain_free(srrw_chain* chain) { delete chain; }

int srrw_chain_node_count(const srrw_chain* chain) {
    return chain == nullptr ? 0 : chain->kernel.node_count();
}

int srrw_chain_stationary(const srrw_chain* chain, double* buf, size_t cap) {
    if (chain == nullptr || buf == nullptr) return fail(SRRW_CONFIG_ERROR, "null argument");
    const auto n = static_cast<size_t>(chain->kernel.node_count());
    if (cap < n) return fail(SRRW_CONFIG_ERROR, "stationary buffer too small");
    const Eigen::VectorXd& mu = chain->kernel.mu();
    for (size_t i = 0; i < n; ++i) buf[i] = mu[static_cast<Eigen::Index>(i)];
    return SRRW_OK;
}

int srrw_chain_slem(const srrw_chain* chain, double* out) {
    if (chain == nullptr || out == nullptr) return fail(SRRW_CONFIG_ERROR, "null argument");
    return guarded([&] {
        *out = srrw::slem(srrw::compute_spectrum(chain->kernel));
        return SRRW_OK;
    });
}

int srrw_cmd_spectrum(const srrw_config* cfg, const char* out_dir, srrw_log_fn log,
                      void* user) {
    if (cfg == nullptr || out_dir == nullptr)
        return fail(SRRW_CONFIG_ERROR, "null argument");
    return run_command(log, user,
                       [&](std::ostream& os) { srrw::cmd_spectrum(cfg->cfg, out_dir, os); });
}

int srrw_cmd_simulate(const srrw_config* cfg, const char* out_dir, int workers,
                      srrw_log_fn log, void* user) {
    if (cfg == nullptr || out_dir == nullptr)
        return fail(SRRW_CONFIG_ERROR, "null argument");
    return run_command(log, user, [&](std::ostream& os) {
        srrw::cmd_simulate(cfg->cfg, out_dir, workers, os);
    });
}

int srrw_cmd_ode(const srrw_config* cfg, const char* out_dir, srrw_log_fn log, void* user) {
    if (cfg == nullptr || out_dir == nullptr)
        return fail(SRRW_CONFIG_ERROR, "null argument");
    return run_command(log, user,
                       [&](std::ostream& os) { srrw::cmd_ode(cfg->cfg, out_dir, os); });
}

int srrw_cmd_analyze(const srrw_config* cfg, const char* out_dir, srrw_log_fn log,
                     void* user) {
    if (cfg == nullptr || out_dir == nullptr)
        return fail(SRRW_CONFIG_ERROR, "null argument");
    return run_command(log, user,
                       [&](std::ostream& os) { srrw::cmd_analyze(cfg->cfg, out_dir, os); });
}

int srrw_validate(int quick, int inject_dbe_break, srrw_check_fn cb, void* user) {
    return guarded([&] {
        const auto results = srrw::run_acceptance(quick != 0, inject_dbe_break != 0);
        bool all_pass = true;
        for (const auto& r : results) {
            if (cb != nullptr)
                cb(r.id.c_str(), r.name.c_str(), r.pass ? 1 : 0, r.detail.c_str(),
                   r.seconds, user);
            all_pass = all_pass && r.pass;
        }
        if (!all_pass) {
            t_last_error = "validation failures";
            return SRRW_VALIDATION_FAIL;
        }
        return SRRW_OK;
    });
}

} // extern "C"
