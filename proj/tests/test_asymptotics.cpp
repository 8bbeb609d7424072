#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "srrw/asymptotics.hpp"
#include "srrw/chain.hpp"
#include "srrw/errors.hpp"
#include "srrw/graph.hpp"

using namespace srrw;

namespace {

ReversibleKernel lazy_two_state() {
    Eigen::MatrixXd P(2, 2);
    P << 0.5, 0.5, 0.5, 0.5;
    Eigen::VectorXd mu(2);
    mu << 0.5, 0.5;
    return kernel_from_dense(P, mu);
}

// Hand computation for the lazy two-state chain: the non-top pair is
// lambda = 0, u = (1/2, -1/2), so
//   U          = [(1+0)/(1-0)] u u^T = [[1/4, -1/4], [-1/4, 1/4]]
//   V(alpha)   = U / (2 alpha + 1)
//   V(1)       = U / 3
// and for g = (0, 1): g^T U g = 1/4, g^T V(1) g = 1/12.
Eigen::MatrixXd two_state_U() {
    Eigen::MatrixXd U(2, 2);
    U << 0.25, -0.25, -0.25, 0.25;
    return U;
}

} // namespace

TEST_CASE("base covariance of the lazy two-state chain") {
    Spectrum s = compute_spectrum(lazy_two_state());
    AsymptoticCovariance U = covariance_U(s);
    CHECK(U.alpha == 0.0);
    CHECK_FALSE(U.out_of_theory);
    CHECK((U.matrix - two_state_U()).cwiseAbs().maxCoeff() <= 1e-14);
    REQUIRE(U.coeff.size() == 1);
    CHECK(U.coeff[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("repellence divides the two-state covariance by 2 alpha + 1") {
    Spectrum s = compute_spectrum(lazy_two_state());
    AsymptoticCovariance V1 = covariance_V(s, 1.0);
    CHECK((V1.matrix - two_state_U() / 3.0).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(V1.coeff[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    AsymptoticCovariance V5 = covariance_V(s, 5.0);
    CHECK((V5.matrix - two_state_U() / 11.0).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("covariance at alpha zero reproduces U bitwise") {
    Graph g = erdos_renyi(12, 25, 19);
    Spectrum s = compute_spectrum(build_mhrw(g));
    AsymptoticCovariance U = covariance_U(s);
    AsymptoticCovariance V0 = covariance_V(s, 0.0);
    CHECK((U.matrix.array() == V0.matrix.array()).all());
    CHECK((U.coeff.array() == V0.coeff.array()).all());
}

TEST_CASE("integral form agrees with the closed form") {
    Spectrum s2 = compute_spectrum(lazy_two_state());
    AsymptoticCovariance closed2 = covariance_V(s2, 1.0);
    AsymptoticCovariance quad2 = covariance_V_integral(lazy_two_state(), s2, 1.0);
    CHECK((closed2.matrix - quad2.matrix).cwiseAbs().maxCoeff() <= 1e-8);

    Graph g = erdos_renyi(7, 12, 29);
    ReversibleKernel k = build_srw(g);
    Spectrum s = compute_spectrum(k);
    for (double alpha : {0.0, 0.5, 2.0}) {
        AsymptoticCovariance closed = covariance_V(s, alpha);
        AsymptoticCovariance quad = covariance_V_integral(k, s, alpha);
        CHECK((closed.matrix - quad.matrix).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("loewner gap on the two-state pair is exactly one third") {
    // V(0) - V(1) = (2/3) U, whose zero-sum eigenvalue is (2/3)(1/2) = 1/3.
    Spectrum s = compute_spectrum(lazy_two_state());
    AsymptoticCovariance U = covariance_U(s);
    AsymptoticCovariance V1 = covariance_V(s, 1.0);
    CHECK(loewner_gap(V1.matrix, U.matrix) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // Reversing the order flips the sign.
    CHECK(loewner_gap(U.matrix, V1.matrix) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("covariances shrink strictly in alpha across random chains") {
    for (std::uint64_t seed : {101ULL, 102ULL, 103ULL}) {
        Graph g = erdos_renyi(8, 16, seed);
        ReversibleKernel k = build_mhrw(g);
        Spectrum s = compute_spectrum(k);
        AsymptoticCovariance prev = covariance_U(s);
        for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
            AsymptoticCovariance cur = covariance_V(s, alpha);
            CHECK(loewner_gap(cur.matrix, prev.matrix) > 0.0);
            // Every eigendirection coefficient shrinks individually.
            for (int i = 0; i < cur.coeff.size(); ++i) CHECK(cur.coeff[i] < prev.coeff[i]);
            prev = cur;
        }
    }
}

TEST_CASE("sampling variance of the indicator test function") {
    Spectrum s = compute_spectrum(lazy_two_state());
    Eigen::VectorXd g(2);
    g << 0.0, 1.0;
    CHECK(sampling_variance(g, covariance_U(s)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sampling_variance(g, covariance_V(s, 1.0)) ==
          doctest::Approx(0.25 / 3.0).epsilon(1e-14));
}

TEST_CASE("reduction bound on the two-state chain is tight") {
    Spectrum s = compute_spectrum(lazy_two_state());
    Eigen::VectorXd g(2);
    g << 0.0, 1.0;
    // Single non-top eigendirection: Lambda is deterministic at lambda = 0,
    // so bound = ratio = 1 / (2 alpha + 1) exactly.
    for (double alpha : {0.5, 1.0, 2.0, 7.0}) {
        auto [bound, ratio] = reduction_bound(g, s, alpha);
        CHECK(std::abs(ratio - 1.0 / (2.0 * alpha + 1.0)) <= 1e-14);
        CHECK(std::abs(bound - ratio) <= 1e-14);
    }
}

TEST_CASE("reduction bound dominates the achieved ratio") {
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        Graph gr = erdos_renyi(10, 22, seed);
        ReversibleKernel k = build_srw(gr);
        Spectrum s = compute_spectrum(k);
        Eigen::VectorXd g(k.node_count());
        for (int i = 0; i < g.size(); ++i) g[i] = gr.degree(i);
        for (double alpha : {0.5, 1.0, 4.0, 10.0}) {
            auto [bound, ratio] = reduction_bound(g, s, alpha);
            CHECK(ratio <= bound + 1e-12);
            CHECK(bound < 1.0);
            CHECK(ratio > 0.0);
        }
    }
}

TEST_CASE("reduction bound is exactly one at alpha zero") {
    Graph gr = erdos_renyi(9, 17, 47);
    ReversibleKernel k = build_mhrw(gr);
    Spectrum s = compute_spectrum(k);
    Eigen::VectorXd g(k.node_count());
    for (int i = 0; i < g.size(); ++i) g[i] = gr.degree(i);
    auto [bound, ratio] = reduction_bound(g, s, 0.0);
    CHECK(bound == 1.0);
    CHECK(ratio == 1.0);
}

TEST_CASE("reduction bound rejects constant test functions") {
    Spectrum s = compute_spectrum(lazy_two_state());
    Eigen::VectorXd g = Eigen::VectorXd::Constant(2, 3.0);
    CHECK_THROWS_AS(reduction_bound(g, s, 1.0), DomainError);
}

TEST_CASE("negative alpha is flagged and guarded") {
    // Slow two-state chain: lambda_0 = 0.9.
    Eigen::MatrixXd P(2, 2);
    P << 0.95, 0.05, 0.05, 0.95;
    Eigen::VectorXd mu(2);
    mu << 0.5, 0.5;
    Spectrum s = compute_spectrum(kernel_from_dense(P, mu));
    // 2 alpha (1 + 0.9) + 1 <= 0 at alpha = -0.4.
    CHECK_THROWS_AS(covariance_V(s, -0.4), DomainError);
    AsymptoticCovariance mild = covariance_V(s, -0.1);
    CHECK(mild.out_of_theory);
    // The self-attracting walk is worse than the base chain.
    AsymptoticCovariance U = covariance_U(s);
    CHECK(loewner_gap(U.matrix, mild.matrix) > 0.0);
}

TEST_CASE("covariance rejects non-ergodic chains") {
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(4, 4);
    P.block(0, 0, 2, 2) << 0.5, 0.5, 0.5, 0.5;
    P.block(2, 2, 2, 2) << 0.5, 0.5, 0.5, 0.5;
    Eigen::VectorXd mu = Eigen::VectorXd::Constant(4, 0.25);
    Spectrum s = compute_spectrum(kernel_from_dense(P, mu));
    CHECK_THROWS_AS(covariance_U(s), NumericError);
    CHECK_THROWS_AS(covariance_V(s, 1.0), NumericError);
}
