#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "srrw/chain.hpp"
#include "srrw/errors.hpp"
#include "srrw/estimators.hpp"
#include "srrw/graph.hpp"
#include "srrw/rng.hpp"
#include "srrw/sa_process.hpp"
#include "srrw/srrw_kernel.hpp"

using namespace srrw;

namespace {

ReversibleKernel lazy_two_state() {
    Eigen::MatrixXd P(2, 2);
    P << 0.5, 0.5, 0.5, 0.5;
    Eigen::VectorXd mu(2);
    mu << 0.5, 0.5;
    return kernel_from_dense(P, mu);
}

ReversibleKernel hop_two_state() {
    return build_srw(Graph::from_edges(2, {{0, 1, 1.0}}));
}

SimConfig base_config(const ReversibleKernel& k, long long n_max) {
    SimConfig cfg;
    cfg.schedule = AlphaSchedule::constant(1.0);
    cfg.n_max = n_max;
    cfg.checkpoints = {n_max};
    cfg.init = init_measure(k.node_count(), InitMode::UniformFake);
    cfg.start_node = 0;
    cfg.g = Eigen::VectorXd::LinSpaced(k.node_count(), 0.0, k.node_count() - 1.0);
    return cfg;
}

} // namespace

TEST_CASE("geometric checkpoint grid") {
    auto cps = geometric_checkpoints(10, 1.2);
    std::vector<long long> expected{0, 1, 2, 3, 4, 5, 6, 7, 9, 10};
    CHECK(cps == expected);
    CHECK(geometric_checkpoints(0, 1.2) == std::vector<long long>{0});
    CHECK(geometric_checkpoints(1, 1.2) == std::vector<long long>{0, 1});
    CHECK_THROWS_AS(geometric_checkpoints(-1, 1.2), DomainError);
    CHECK_THROWS_AS(geometric_checkpoints(10, 1.0), DomainError);
}

TEST_CASE("initial measures") {
    EmpiricalMeasure uniform = init_measure(3, InitMode::UniformFake);
    CHECK(uniform.total == 3.0);
    CHECK((uniform.counts.array() == 1.0).all());
    CHECK((uniform.x().array() == 1.0 / 3.0).all());

    Graph g = Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    EmpiricalMeasure degree = init_measure(3, InitMode::DegreeFake, &g);
    CHECK(degree.counts[0] == 1.0);
    CHECK(degree.counts[1] == 2.0);
    CHECK(degree.total == 4.0);
    CHECK_THROWS_AS(init_measure(3, InitMode::DegreeFake), DomainError);

    Eigen::VectorXd nu(3);
    nu << 0.2, 0.3, 0.5;
    EmpiricalMeasure expl = init_measure(3, InitMode::Explicit, nullptr, &nu);
    CHECK((expl.counts.array() == nu.array()).all());
    CHECK(expl.total == 1.0);
    Eigen::VectorXd bad(3);
    bad << 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(init_measure(3, InitMode::Explicit, nullptr, &bad), DomainError);
    bad << 0.0, 0.5, 0.5;
    CHECK_THROWS_AS(init_measure(3, InitMode::Explicit, nullptr, &bad), DomainError);
    CHECK_THROWS_AS(init_measure(3, InitMode::Explicit), DomainError);
    CHECK_THROWS_AS(init_measure(1, InitMode::UniformFake), DomainError);
}

TEST_CASE("truncation family geometry") {
    TruncationFamily fam(4.0);
    CHECK(fam.lower(0) == 0.25);
    CHECK(fam.lower(6) == 0.1);
    Eigen::VectorXd x(3);
    x << 0.3, 0.3, 0.4;
    CHECK(fam.contains(x, 0));
    x << 0.2, 0.4, 0.4;
    CHECK_FALSE(fam.contains(x, 0));
    CHECK(fam.contains(x, 1));
    CHECK_THROWS_AS(TruncationFamily(0.0), DomainError);
    CHECK_THROWS_AS(TruncationFamily(-1.0), DomainError);
}

TEST_CASE("a forced visit updates counts exactly") {
    // The hop chain must move 1 -> 0; counts (1,1) become (2,1), so the
    // measure is (2/3, 1/3), the gamma = 1/3 update from (1/2, 1/2).
    ReversibleKernel k = hop_two_state();
    SimConfig cfg = base_config(k, 1);
    cfg.start_node = 1;
    cfg.checkpoints = {0, 1};
    RunRecord rec = run(k, cfg, 123);
    CHECK(rec.final_x[0] == 2.0 / 3.0);
    CHECK(rec.final_x[1] == 1.0 / 3.0);
    CHECK(rec.truncations == 0);
    // Checkpoint 0 sees the prior measure; the estimators have no sample yet.
    CHECK(rec.tvd[0] == 0.0);
    CHECK(std::isnan(rec.psi[0]));
    CHECK(std::isnan(rec.psi_hat[0]));
    // After the single forced visit to node 0, psi = g(0) = 0.
    CHECK(rec.psi[1] == 0.0);
    CHECK(rec.tvd[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("count increments realize the stochastic approximation recursion") {
    // Independent replica of the run loop through the public sampling API,
    // using the affine form x <- x + gamma (e_next - x) with gamma = 1/(t+1)
    // instead of count arithmetic.
    Graph g = erdos_renyi(8, 16, 91);
    ReversibleKernel k = build_mhrw(g);
    const int n_nodes = k.node_count();
    SimConfig cfg = base_config(k, 400);
    cfg.schedule = AlphaSchedule::constant(1.3);
    const std::uint64_t seed = 2024;
    RunRecord rec = run(k, cfg, seed);

    std::mt19937_64 rng(seed);
    Eigen::VectorXd counts = Eigen::VectorXd::Ones(n_nodes);
    Eigen::VectorXd x_rec = Eigen::VectorXd::Constant(n_nodes, 1.0 / n_nodes);
    int X = 0;
    for (long long step = 0; step < 400; ++step) {
        const double u = uniform_unit(rng);
        const int next = sample_next(k, counts, X, 1.3, u);
        const double gamma = 1.0 / (static_cast<double>(n_nodes) + step + 1.0);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n_nodes);
        e[next] = 1.0;
        x_rec += gamma * (e - x_rec);
        counts[next] += 1.0;
        X = next;
    }
    CHECK((rec.final_x - x_rec).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("random starts are drawn from the run seed deterministically") {
    ReversibleKernel k = build_srw(erdos_renyi(10, 20, 33));
    SimConfig cfg = base_config(k, 50);
    cfg.start_node = -1;
    RunRecord a = run(k, cfg, 77);
    RunRecord b = run(k, cfg, 77);
    CHECK((a.final_x - b.final_x).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.seed == 77);
    RunRecord c = run(k, cfg, 78);
    CHECK((a.final_x - c.final_x).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("truncation restarts rewind the step-size clock") {
    // With M = 2 the kappa = 0 box is the single point (1/2, 1/2), so the
    // first half step must truncate: sigma becomes 1 - nu = 1, the measure
    // returns to x0 with total t0 + sigma = 3, and the walker restarts.
    // The second step lands in the widened kappa = 1 box [1/3, 2/3] with
    // total 4, so the accepted update is exactly +-(1/8, -1/8) around 1/2.
    ReversibleKernel k = lazy_two_state();
    SimConfig cfg = base_config(k, 2);
    cfg.checkpoints = {0, 1, 2};
    cfg.truncation = true;
    cfg.truncation_M = 2.0;
    RunRecord rec = run(k, cfg, 5);
    CHECK(rec.truncations == 1);
    // Checkpoint 1 sits right after the restart: measure back at mu.
    CHECK(rec.tvd[1] == 0.0);
    const bool up = rec.final_x[0] == 0.625 && rec.final_x[1] == 0.375;
    const bool down = rec.final_x[0] == 0.375 && rec.final_x[1] == 0.625;
    CHECK((up || down));
}

TEST_CASE("a wide truncation family never fires and leaves the run unchanged") {
    ReversibleKernel k = build_mhrw(erdos_renyi(6, 10, 71));
    SimConfig plain = base_config(k, 500);
    SimConfig guarded = plain;
    guarded.truncation = true;
    guarded.truncation_M = 50.0;
    RunRecord a = run(k, plain, 99);
    RunRecord b = run(k, guarded, 99);
    CHECK(b.truncations == 0);
    CHECK((a.final_x - b.final_x).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.tvd == b.tvd);
    CHECK(a.psi == b.psi);
}

TEST_CASE("dirichlet restarts stay inside the base truncation box") {
    ReversibleKernel k = build_mhrw(erdos_renyi(5, 8, 13));
    SimConfig cfg = base_config(k, 120);
    cfg.truncation = true;
    cfg.truncation_M = 6.0;
    cfg.restart = RestartPolicy::DirichletResample;
    RunRecord a = run(k, cfg, 31);
    RunRecord b = run(k, cfg, 31);
    CHECK((a.final_x - b.final_x).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.final_x.minCoeff() > 0.0);
    CHECK(a.final_x.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("an infeasible base box is rejected") {
    // 1/M = 1/2 per coordinate cannot hold for five coordinates.
    ReversibleKernel k = build_mhrw(erdos_renyi(5, 8, 13));
    SimConfig cfg = base_config(k, 10);
    cfg.truncation = true;
    cfg.truncation_M = 2.0;
    CHECK_THROWS_AS(run(k, cfg, 1), DomainError);
}

TEST_CASE("reweighted and plain estimators coincide under a uniform target") {
    // Four nodes: the weights 1/mu_i = 4 scale numerator and denominator by
    // an exact power of two, so the two estimates agree bitwise.
    Graph g = Graph::from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
    ReversibleKernel k = build_mhrw(g);
    SimConfig cfg = base_config(k, 300);
    cfg.checkpoints = {10, 50, 300};
    RunRecord rec = run(k, cfg, 7);
    for (std::size_t c = 0; c < rec.checkpoints.size(); ++c)
        CHECK(rec.psi[c] == rec.psi_hat[c]);
}

TEST_CASE("prior-free tvd ignores the fake visits") {
    ReversibleKernel k = lazy_two_state();
    SimConfig cfg = base_config(k, 1);
    cfg.checkpoints = {0, 1};
    cfg.prior_free_tvd = true;
    RunRecord rec = run(k, cfg, 3);
    CHECK(std::isnan(rec.tvd[0]));
    // One real visit: the visit measure is a point mass, tvd = 1/2.
    CHECK(rec.tvd[1] == 0.5);
}

TEST_CASE("config validation in run") {
    ReversibleKernel k = lazy_two_state();
    SimConfig cfg = base_config(k, 10);
    cfg.g = Eigen::VectorXd::Ones(3);
    CHECK_THROWS_AS(run(k, cfg, 1), DomainError);
    cfg = base_config(k, 10);
    cfg.start_node = 2;
    CHECK_THROWS_AS(run(k, cfg, 1), DomainError);
    cfg = base_config(k, 10);
    cfg.checkpoints = {0, 11};
    CHECK_THROWS_AS(run(k, cfg, 1), DomainError);
    cfg = base_config(k, 10);
    cfg.checkpoints = {5, 3};
    CHECK_THROWS_AS(run(k, cfg, 1), DomainError);
    cfg = base_config(k, 10);
    cfg.init.counts = Eigen::VectorXd::Ones(3);
    cfg.init.total = 3.0;
    CHECK_THROWS_AS(run(k, cfg, 1), DomainError);
}

TEST_CASE("ensembles reduce identically for any worker count") {
    ReversibleKernel k = build_mhrw(erdos_renyi(7, 13, 55));
    SimConfig cfg = base_config(k, 200);
    cfg.checkpoints = {1, 100, 200};
    EnsembleRecord one = run_ensemble(k, cfg, 6, 4242, 1);
    EnsembleRecord three = run_ensemble(k, cfg, 6, 4242, 3);
    EnsembleRecord defaulted = run_ensemble(k, cfg, 6, 4242);
    CHECK(one.mean_tvd == three.mean_tvd);
    CHECK(one.mse == three.mse);
    CHECK(one.psi_mean == three.psi_mean);
    CHECK(one.psi_hat_mean == three.psi_hat_mean);
    CHECK((one.final_xs - three.final_xs).cwiseAbs().maxCoeff() == 0.0);
    CHECK(one.mean_tvd == defaulted.mean_tvd);
    CHECK((one.final_xs - defaulted.final_xs).cwiseAbs().maxCoeff() == 0.0);
    CHECK(one.truth_psi == three.truth_psi);
    CHECK(one.total_truncations == three.total_truncations);
}

TEST_CASE("ensemble aggregates match a per-run recomputation") {
    ReversibleKernel k = build_srw(erdos_renyi(6, 11, 21));
    SimConfig cfg = base_config(k, 150);
    cfg.checkpoints = {150};
    const int K = 5;
    EnsembleRecord ens = run_ensemble(k, cfg, K, 1000, 1);
    double tvd_sum = 0.0;
    std::vector<double> psis;
    for (int r = 0; r < K; ++r) {
        RunRecord rec = run(k, cfg, split_seed(1000, static_cast<std::uint64_t>(r)));
        tvd_sum += rec.tvd[0];
        psis.push_back(rec.psi[0]);
        CHECK((ens.final_xs.row(r).transpose() - rec.final_x).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK(ens.mean_tvd[0] == doctest::Approx(tvd_sum / K).epsilon(1e-15));
    const double truth = cfg.g.dot(k.mu());
    CHECK(ens.truth_psi == truth);
    CHECK(ens.mse[0] == doctest::Approx(mse(psis, truth)).epsilon(1e-15));
}

TEST_CASE("ensemble propagates run failures") {
    ReversibleKernel k = lazy_two_state();
    SimConfig cfg = base_config(k, 10);
    cfg.g = Eigen::VectorXd::Ones(5);
    CHECK_THROWS_AS(run_ensemble(k, cfg, 4, 1, 2), DomainError);
    CHECK_THROWS_AS(run_ensemble(k, cfg, 0, 1, 1), DomainError);
}
