#include "srrw/sa_process.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "srrw/errors.hpp"
#include "srrw/estimators.hpp"
#include "srrw/rng.hpp"
#include "srrw/srrw_kernel.hpp"

namespace srrw {

EmpiricalMeasure init_measure(int node_count, InitMode mode, const Graph* g,
                              const Eigen::VectorXd* nu) {
    if (node_count < 2) throw DomainError("init_measure: need at least two nodes");
    EmpiricalMeasure m;
    switch (mode) {
        case InitMode::UniformFake:
            m.counts = Eigen::VectorXd::Ones(node_count);
            break;
        case InitMode::DegreeFake: {
            if (g == nullptr || g->node_count() != node_count)
                throw DomainError("init_measure: degree mode needs the graph");
            m.counts.resize(node_count);
            for (int i = 0; i < node_count; ++i) m.counts[i] = g->degree(i);
            break;
        }
        case InitMode::Explicit: {
            if (nu == nullptr || nu->size() != node_count)
                throw DomainError("init_measure: explicit mode needs nu");
            for (int i = 0; i < node_count; ++i)
                if (!((*nu)[i] > 0.0))
                    throw DomainError("init_measure: nu must be interior");
            if (std::abs(nu->sum() - 1.0) > 1e-9)
                throw DomainError("init_measure: nu must sum to 1");
            m.counts = *nu;
            break;
        }
    }
    m.total = m.counts.sum();
    return m;
}

TruncationFamily::TruncationFamily(double m) : M(m) {
    if (!(m > 0.0)) throw DomainError("truncation: M must be positive");
}

bool TruncationFamily::contains(const Eigen::VectorXd& x, long long kappa) const {
    const double lo = lower(kappa);
    const double hi = 1.0 - lo;
    return (x.array() >= lo).all() && (x.array() <= hi).all();
}

std::vector<long long> geometric_checkpoints(long long n_max, double ratio) {
    if (n_max < 0) throw DomainError("checkpoints: horizon must be nonnegative");
    if (!(ratio > 1.0)) throw DomainError("checkpoints: ratio must exceed 1");
    std::vector<long long> cps{0};
    double v = 1.0;
    while (true) {
        const auto c = static_cast<long long>(std::llround(v));
        if (c >= n_max) break;
        if (c > cps.back()) cps.push_back(c);
        v *= ratio;
    }
    if (n_max > cps.back()) cps.push_back(n_max);
    return cps;
}

namespace {

// Mixes a fresh simplex draw toward the known-good restart point just enough
// to enter K_0, preserving as much of the draw as the bounds allow.
Eigen::VectorXd project_into_k0(const Eigen::VectorXd& draw, const Eigen::VectorXd& x0,
                                const TruncationFamily& family) {
    const double lo = family.lower(0);
    const double hi = 1.0 - lo;
    double theta = 0.0;
    bool feasible = true;
    for (Eigen::Index i = 0; i < draw.size() && feasible; ++i) {
        const double d = draw[i];
        const double slope = x0[i] - d;
        if (slope == 0.0) {
            feasible = d >= lo && d <= hi;
            continue;
        }
        // lo <= d + theta * slope <= hi
        double a = (lo - d) / slope;
        double b = (hi - d) / slope;
        if (a > b) std::swap(a, b);
        theta = std::max(theta, a);
        feasible = theta <= std::min(b, 1.0);
    }
    if (feasible) {
        Eigen::VectorXd y = (1.0 - theta) * draw + theta * x0;
        if (family.contains(y, 0)) return y;
    }
    return x0;
}

void validate_config(const ReversibleKernel& k, const SimConfig& cfg) {
    const int n = k.node_count();
    if (cfg.n_max < 0) throw DomainError("run: horizon must be nonnegative");
    if (cfg.init.counts.size() != n)
        throw DomainError("run: initial measure length mismatch");
    if (!(cfg.init.counts.array() > 0.0).all() || !(cfg.init.total > 0.0))
        throw DomainError("run: initial measure must be strictly positive");
    if (cfg.g.size() != n) throw DomainError("run: test function length mismatch");
    if (cfg.start_node >= n) throw DomainError("run: start node out of range");
    long long prev = -1;
    for (long long c : cfg.checkpoints) {
        if (c <= prev || c < 0 || c > cfg.n_max)
            throw DomainError("run: checkpoints must be ascending within [0, horizon]");
        prev = c;
    }
}

} // namespace

RunRecord run(const ReversibleKernel& k, const SimConfig& cfg, std::uint64_t seed) {
    validate_config(k, cfg);
    const int n = k.node_count();

    std::mt19937_64 rng(seed);
    const int start = cfg.start_node >= 0
                          ? cfg.start_node
                          : static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));

    Eigen::VectorXd counts = cfg.init.counts;
    const double t0 = cfg.init.total;
    double total = t0;
    const Eigen::VectorXd x0 = counts / total;
    TruncationFamily family(cfg.truncation ? cfg.truncation_M : 1.0);
    if (cfg.truncation && !family.contains(x0, 0))
        throw DomainError("run: restart point lies outside K_0");

    Eigen::VectorXd logdev = counts.array().log() - k.log_mu().array();
    RunningEstimator est(cfg.g, k.mu());

    RunRecord rec;
    rec.seed = seed;
    rec.checkpoints = cfg.checkpoints;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto record = [&]() {
        double d;
        if (cfg.prior_free_tvd) {
            const double visits = total - t0;
            d = visits > 0.0
                    ? 0.5 * (((counts - cfg.init.counts) / visits) - k.mu()).cwiseAbs().sum()
                    : nan;
        } else {
            d = 0.5 * ((counts / total) - k.mu()).cwiseAbs().sum();
        }
        rec.tvd.push_back(d);
        rec.psi.push_back(est.count() > 0 ? est.psi() : nan);
        rec.psi_hat.push_back(est.count() > 0 ? est.psi_reweighted() : nan);
    };

    std::size_t ci = 0;
    if (ci < cfg.checkpoints.size() && cfg.checkpoints[ci] == 0) {
        record();
        ++ci;
    }

    long long sigma = 0, kappa = 0, nu = 0;
    int X = start;
    for (long long step = 0; step < cfg.n_max; ++step) {
        const double alpha = cfg.schedule.at(step);
        const double u = uniform_unit(rng);
        const int next = detail::sample_support(k, logdev, X, alpha, u);

        bool accept = true;
        if (cfg.truncation) {
            const double tp1 = total + 1.0;
            const double lo = family.lower(kappa);
            const double hi = 1.0 - lo;
            for (int i = 0; i < n; ++i) {
                const double v = (counts[i] + (i == next ? 1.0 : 0.0)) / tp1;
                if (v < lo || v > hi) {
                    accept = false;
                    break;
                }
            }
        }
        if (accept) {
            counts[next] += 1.0;
            total += 1.0;
            logdev[next] = std::log(counts[next]) - k.log_mu()[next];
            X = next;
            est.add(next);
            ++sigma;
            ++nu;
        } else {
            // Appendix-style restart: the step-size clock rewinds past the
            // discarded stretch, the active set grows, and both the measure
            // and the walker return to their starting configuration.
            sigma = sigma + 1 - nu;
            nu = 0;
            ++kappa;
            ++rec.truncations;
            total = t0 + static_cast<double>(sigma);
            Eigen::VectorXd base = x0;
            if (cfg.restart == RestartPolicy::DirichletResample) {
                const auto d = dirichlet_uniform(rng, n);
                base = project_into_k0(
                    Eigen::Map<const Eigen::VectorXd>(d.data(), n), x0, family);
            }
            counts = base * total;
            logdev = counts.array().log() - k.log_mu().array();
            X = start;
        }

        if (ci < cfg.checkpoints.size() && cfg.checkpoints[ci] == step + 1) {
            record();
            ++ci;
        }
    }
    rec.final_x = counts / total;
    return rec;
}

EnsembleRecord run_ensemble(const ReversibleKernel& k, const SimConfig& cfg, int K,
                            std::uint64_t base_seed, int workers) {
    if (K < 1) throw DomainError("run_ensemble: need at least one run");
    validate_config(k, cfg);

    std::vector<RunRecord> recs(static_cast<std::size_t>(K));
    std::atomic<int> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&]() {
        while (true) {
            const int i = cursor.fetch_add(1);
            if (i >= K) return;
            try {
                recs[static_cast<std::size_t>(i)] =
                    run(k, cfg, split_seed(base_seed, static_cast<std::uint64_t>(i)));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    int W = workers > 0 ? workers
                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    W = std::min(W, K);
    if (W <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(W));
        for (int w = 0; w < W; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // Order-fixed reduction keeps aggregates independent of scheduling.
    EnsembleRecord out;
    out.checkpoints = cfg.checkpoints;
    out.truth_psi = cfg.g.dot(k.mu());
    const std::size_t C = cfg.checkpoints.size();
    out.mean_tvd.assign(C, 0.0);
    out.mse.assign(C, 0.0);
    out.psi_mean.assign(C, 0.0);
    out.psi_hat_mean.assign(C, 0.0);
    out.final_xs.resize(K, k.node_count());
    for (int r = 0; r < K; ++r) {
        const RunRecord& rec = recs[static_cast<std::size_t>(r)];
        for (std::size_t c = 0; c < C; ++c) {
            out.mean_tvd[c] += rec.tvd[c];
            out.psi_mean[c] += rec.psi[c];
            out.psi_hat_mean[c] += rec.psi_hat[c];
            const double e = rec.psi[c] - out.truth_psi;
            out.mse[c] += e * e;
        }
        out.final_xs.row(r) = rec.final_x.transpose();
        out.total_truncations += rec.truncations;
        if (rec.truncations > 0) ++out.runs_truncated;
    }
    for (std::size_t c = 0; c < C; ++c) {
        out.mean_tvd[c] /= K;
        out.psi_mean[c] /= K;
        out.psi_hat_mean[c] /= K;
        out.mse[c] /= K;
    }
    return out;
}

} // namespace srrw
