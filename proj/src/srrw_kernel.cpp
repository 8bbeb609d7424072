#include "srrw/srrw_kernel.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "srrw/errors.hpp"

namespace srrw {

void validate_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha <= -0.5)
        throw DomainError("alpha must be finite and greater than -0.5");
}

namespace {

void check_support_positive(const ReversibleKernel& k, const Eigen::VectorXd& x, int i) {
    for (const auto& e : k.row(i))
        if (!(x[e.j] > 0.0))
            throw DomainError("kernel_row: nonpositive x on the support of row " +
                              std::to_string(i));
}

} // namespace

Eigen::VectorXd kernel_row(const ReversibleKernel& k, const Eigen::VectorXd& x, int i,
                           double alpha) {
    validate_alpha(alpha);
    if (x.size() != k.node_count()) throw DomainError("kernel_row: x length mismatch");
    const auto& row = k.row(i);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(k.node_count());
    if (alpha == 0.0) {
        for (const auto& e : row) out[e.j] = e.p;
        return out;
    }
    check_support_positive(k, x, i);
    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& e : row) {
        const double t = -alpha * (std::log(x[e.j]) - k.log_mu()[e.j]);
        if (t > shift) shift = t;
        out[e.j] = t;
    }
    double total = 0.0;
    for (const auto& e : row) {
        const double w = e.p * std::exp(out[e.j] - shift);
        out[e.j] = w;
        total += w;
    }
    for (const auto& e : row) out[e.j] /= total;
    return out;
}

namespace detail {

double stationary_core(const ReversibleKernel& k, const Eigen::VectorXd& x, double alpha,
                       Eigen::VectorXd& pi_out) {
    const int n = k.node_count();
    if (x.size() != n) throw DomainError("stationary_of: x length mismatch");
    if (alpha == 0.0) {
        pi_out = k.mu();
        return 0.0; // w = 1 identically
    }
    for (int i = 0; i < n; ++i)
        if (!(x[i] > 0.0)) throw DomainError("stationary_of: x must be positive");

    // t_i = -alpha log(x_i / mu_i); f_i = e^{2m} mu_i e^{t_i - m} sum_j P_ij e^{t_j - m}.
    Eigen::VectorXd t = -alpha * (x.array().log() - k.log_mu().array());
    const double m = t.maxCoeff();
    Eigen::VectorXd e = (t.array() - m).exp();
    pi_out.resize(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& entry : k.row(i)) s += entry.p * e[entry.j];
        pi_out[i] = k.mu()[i] * e[i] * s;
        total += pi_out[i];
    }
    pi_out /= total;
    return 2.0 * m + std::log(total);
}

int sample_support(const ReversibleKernel& k, const Eigen::VectorXd& logdev, int i,
                   double alpha, double u) {
    const auto& row = k.row(i);
    if (alpha == 0.0) {
        double cum = 0.0;
        for (const auto& e : row) {
            cum += e.p;
            if (cum > u) return e.j;
        }
        return row.back().j;
    }
    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& e : row) {
        const double t = -alpha * logdev[e.j];
        if (t > shift) shift = t;
    }
    // Normalized exactly as kernel_row normalizes, so draws here agree
    // bitwise with sample_next on the same inputs.
    thread_local std::vector<double> weights;
    weights.resize(row.size());
    double total = 0.0;
    for (std::size_t r = 0; r < row.size(); ++r) {
        weights[r] = row[r].p * std::exp(-alpha * logdev[row[r].j] - shift);
        total += weights[r];
    }
    double cum = 0.0;
    for (std::size_t r = 0; r < row.size(); ++r) {
        cum += weights[r] / total;
        if (cum > u) return row[r].j;
    }
    return row.back().j;
}

} // namespace detail

Eigen::VectorXd stationary_of(const ReversibleKernel& k, const Eigen::VectorXd& x,
                              double alpha) {
    validate_alpha(alpha);
    Eigen::VectorXd pi;
    detail::stationary_core(k, x, alpha, pi);
    return pi;
}

int sample_next(const ReversibleKernel& k, const Eigen::VectorXd& x, int i, double alpha,
                double u) {
    validate_alpha(alpha);
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("sample_next: u must lie in [0,1)");
    if (x.size() != k.node_count()) throw DomainError("sample_next: x length mismatch");
    const auto& row = k.row(i);
    if (alpha == 0.0) {
        double cum = 0.0;
        for (const auto& e : row) {
            cum += e.p;
            if (cum > u) return e.j;
        }
        return row.back().j;
    }
    check_support_positive(k, x, i);
    Eigen::VectorXd r = kernel_row(k, x, i, alpha);
    double cum = 0.0;
    for (const auto& e : row) {
        cum += r[e.j];
        if (cum > u) return e.j;
    }
    return row.back().j;
}

double verify_scale_invariance(const ReversibleKernel& k, const Eigen::VectorXd& x,
                               double alpha, double c) {
    if (!(c > 0.0)) throw DomainError("verify_scale_invariance: c must be positive");
    double worst = 0.0;
    const Eigen::VectorXd cx = c * x;
    for (int i = 0; i < k.node_count(); ++i) {
        const Eigen::VectorXd a = kernel_row(k, x, i, alpha);
        const Eigen::VectorXd b = kernel_row(k, cx, i, alpha);
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace srrw
