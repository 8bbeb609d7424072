#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace srrw {

// Running ergodic estimators over the visited nodes X_1..X_n. The fake-visit
// prior in the empirical measure never enters these sums.
class RunningEstimator {
public:
    // g is the test function; mu supplies the importance weights 1/mu_i used
    // by the reweighted estimator.
    RunningEstimator(const Eigen::VectorXd& g, const Eigen::VectorXd& mu);

    void add(int node);
    long long count() const { return n_; }

    // psi_n(g) = (1/n) sum_k g(X_k); converges to g^T mu. Throws DomainError
    // before the first sample.
    double psi() const;

    // Importance-reweighted mean sum w g / sum w with w(i) = 1/mu_i;
    // converges to the uniform average of g regardless of mu.
    double psi_reweighted() const;

private:
    Eigen::VectorXd g_;
    Eigen::VectorXd w_;
    double sum_g_ = 0.0;
    double sum_wg_ = 0.0;
    double sum_w_ = 0.0;
    long long n_ = 0;
};

// Total variation distance (1/2) sum |x_i - mu_i|. Both arguments must be
// normalized within 1e-9.
double tvd(const Eigen::VectorXd& x, const Eigen::VectorXd& mu);

// Mean squared error of an ensemble of estimates against a known truth.
double mse(const std::vector<double>& estimates, double truth);

struct CltEstimate {
    Eigen::MatrixXd covariance;     // n * sample covariance of x_n across runs
    Eigen::MatrixXd standard_error; // per-entry normal-approximation SE
    Eigen::VectorXd mean_bias;      // ensemble mean minus mu
    long long n = 0;
};

// Empirical CLT covariance from an ensemble of empirical measures at a fixed
// step count n (one row per run): n/(K-1) sum_k (x^k - xbar)(x^k - xbar)^T.
// Entry standard errors use the Gaussian approximation
// sqrt((C_ii C_jj + C_ij^2) / (K-1)). Needs at least two runs.
CltEstimate empirical_clt_covariance(const Eigen::MatrixXd& samples,
                                     const Eigen::VectorXd& mu, long long n);

} // namespace srrw
