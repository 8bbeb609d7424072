#include "srrw/estimators.hpp"

#include <cmath>

#include "srrw/errors.hpp"

namespace srrw {

RunningEstimator::RunningEstimator(const Eigen::VectorXd& g, const Eigen::VectorXd& mu) {
    if (g.size() != mu.size()) throw DomainError("estimator: g and mu length mismatch");
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (!(mu[i] > 0.0)) throw DomainError("estimator: mu must be positive");
    g_ = g;
    w_ = mu.cwiseInverse();
}

void RunningEstimator::add(int node) {
    if (node < 0 || node >= g_.size()) throw DomainError("estimator: node out of range");
    sum_g_ += g_[node];
    sum_wg_ += w_[node] * g_[node];
    sum_w_ += w_[node];
    ++n_;
}

double RunningEstimator::psi() const {
    if (n_ == 0) throw DomainError("psi: no samples");
    return sum_g_ / static_cast<double>(n_);
}

double RunningEstimator::psi_reweighted() const {
    if (n_ == 0) throw DomainError("psi_reweighted: no samples");
    return sum_wg_ / sum_w_;
}

double tvd(const Eigen::VectorXd& x, const Eigen::VectorXd& mu) {
    if (x.size() != mu.size()) throw DomainError("tvd: length mismatch");
    if (std::abs(x.sum() - 1.0) > 1e-9 || std::abs(mu.sum() - 1.0) > 1e-9)
        throw DomainError("tvd: arguments must be normalized");
    return 0.5 * (x - mu).cwiseAbs().sum();
}

double mse(const std::vector<double>& estimates, double truth) {
    if (estimates.empty()) throw DomainError("mse: empty ensemble");
    double acc = 0.0;
    for (double e : estimates) acc += (e - truth) * (e - truth);
    return acc / static_cast<double>(estimates.size());
}

CltEstimate empirical_clt_covariance(const Eigen::MatrixXd& samples,
                                     const Eigen::VectorXd& mu, long long n) {
    const auto K = samples.rows();
    if (K < 2) throw DomainError("empirical_clt_covariance: need at least two runs");
    if (samples.cols() != mu.size())
        throw DomainError("empirical_clt_covariance: column count must match mu");
    if (n <= 0) throw DomainError("empirical_clt_covariance: n must be positive");

    const Eigen::RowVectorXd xbar = samples.colwise().mean();
    const Eigen::MatrixXd centered = samples.rowwise() - xbar;
    CltEstimate out;
    out.n = n;
    out.covariance = (static_cast<double>(n) / static_cast<double>(K - 1)) *
                     (centered.transpose() * centered);
    const auto N = samples.cols();
    out.standard_error.resize(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j) {
            const double cii = out.covariance(i, i);
            const double cjj = out.covariance(j, j);
            const double cij = out.covariance(i, j);
            out.standard_error(i, j) =
                std::sqrt((cii * cjj + cij * cij) / static_cast<double>(K - 1));
        }
    out.mean_bias = xbar.transpose() - mu;
    return out;
}

} // namespace srrw
