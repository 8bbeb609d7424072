#include "srrw/ode.hpp"

#include <cmath>
#include <optional>

#include "srrw/errors.hpp"
#include "srrw/srrw_kernel.hpp"

namespace srrw {

Eigen::VectorXd drift(const ReversibleKernel& k, const Eigen::VectorXd& x, double alpha) {
    validate_alpha(alpha);
    Eigen::VectorXd pi;
    detail::stationary_core(k, x, alpha, pi);
    return pi - x;
}

double lyapunov(const ReversibleKernel& k, const Eigen::VectorXd& x, double alpha) {
    validate_alpha(alpha);
    Eigen::VectorXd pi;
    return std::exp(detail::stationary_core(k, x, alpha, pi));
}

double lyapunov_derivative(const ReversibleKernel& k, const Eigen::VectorXd& x,
                           double alpha) {
    validate_alpha(alpha);
    const int n = k.node_count();
    if (x.size() != n) throw DomainError("lyapunov_derivative: x length mismatch");
    if (alpha == 0.0) return 0.0; // w is constant

    Eigen::VectorXd pi;
    const double log_w = detail::stationary_core(k, x, alpha, pi);
    const double w = std::exp(log_w);
    const Eigen::VectorXd h = pi - x;

    // Variance form, stabilized: Z_i = w pi_i / x_i under weights x_i.
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z[i] = w * pi[i] / x[i];
    const double zbar = x.dot(z);
    double var = 0.0;
    for (int i = 0; i < n; ++i) var += x[i] * (z[i] - zbar) * (z[i] - zbar);
    const double from_variance = -(2.0 * alpha / w) * var;

    // Gradient form via direct powers; representable only while the
    // exponentiations stay in range.
    const Eigen::VectorXd logdev = x.array().log() - k.log_mu().array();
    if ((alpha * logdev.array().abs()).maxCoeff() > 500.0) return from_variance;
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r[i] = std::pow(x[i] / k.mu()[i], -alpha);
    double from_gradient = 0.0;
    for (int i = 0; i < n; ++i) {
        double pr = 0.0;
        for (const auto& e : k.row(i)) pr += e.p * r[e.j];
        const double g = -2.0 * alpha * std::pow(x[i] / k.mu()[i], -alpha - 1.0) * pr;
        from_gradient += g * h[i];
    }

    const double tol =
        1e-9 * std::max(std::abs(from_gradient), std::abs(from_variance)) + 1e-12;
    if (std::abs(from_gradient - from_variance) > tol)
        throw NumericError("lyapunov_derivative: formulas disagree: gradient " +
                           std::to_string(from_gradient) + " vs variance " +
                           std::to_string(from_variance));
    // Roundoff can leave a positive residue of order 1e-12 at the fixed
    // point, where the exact value is 0.
    if (alpha > 0.0 && from_gradient > 0.0) return 0.0;
    if (alpha < 0.0 && from_gradient < 0.0) return 0.0;
    return from_gradient;
}

namespace {

bool positive(const Eigen::VectorXd& v) {
    return (v.array() > 0.0).all();
}

// One RK4 step of width h; empty when a stage or the result leaves the
// positive orthant.
std::optional<Eigen::VectorXd> rk4_step(const ReversibleKernel& k,
                                        const Eigen::VectorXd& x, double alpha, double h) {
    const Eigen::VectorXd k1 = drift(k, x, alpha);
    Eigen::VectorXd s = x + 0.5 * h * k1;
    if (!positive(s)) return std::nullopt;
    const Eigen::VectorXd k2 = drift(k, s, alpha);
    s = x + 0.5 * h * k2;
    if (!positive(s)) return std::nullopt;
    const Eigen::VectorXd k3 = drift(k, s, alpha);
    s = x + h * k3;
    if (!positive(s)) return std::nullopt;
    const Eigen::VectorXd k4 = drift(k, s, alpha);
    Eigen::VectorXd next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!positive(next)) return std::nullopt;
    return next;
}

} // namespace

OdeTrajectory integrate(const ReversibleKernel& k, const Eigen::VectorXd& x0, double alpha,
                        double T, double dt) {
    validate_alpha(alpha);
    if (x0.size() != k.node_count()) throw DomainError("integrate: x0 length mismatch");
    if (!positive(x0)) throw DomainError("integrate: x0 must be interior");
    if (std::abs(x0.sum() - 1.0) > 1e-9) throw DomainError("integrate: x0 must sum to 1");
    if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("integrate: T and dt must be positive");

    OdeTrajectory traj;
    auto record = [&](double t, const Eigen::VectorXd& x) {
        traj.t.push_back(t);
        traj.x.push_back(x);
        traj.w.push_back(lyapunov(k, x, alpha));
    };

    Eigen::VectorXd x = x0;
    record(0.0, x);
    const auto steps = static_cast<long long>(std::ceil(T / dt - 1e-12));
    for (long long s = 1; s <= steps; ++s) {
        const double target = std::min(static_cast<double>(s) * dt, T);
        double remaining = target - static_cast<double>(s - 1) * dt;
        while (remaining > 1e-15 * T) {
            double h = remaining;
            std::optional<Eigen::VectorXd> next;
            while (!(next = rk4_step(k, x, alpha, h))) {
                h *= 0.5;
                if (h < 1e-12)
                    throw NumericError("integrate: positivity guard drove the substep "
                                       "below 1e-12 at t = " +
                                       std::to_string(target - remaining));
            }
            x = *next;
            remaining -= h;
        }
        record(target, x);
    }
    return traj;
}

Eigen::MatrixXd jacobian_at_mu(const ReversibleKernel& k, double alpha) {
    validate_alpha(alpha);
    const int n = k.node_count();
    const Eigen::MatrixXd P = k.dense();
    Eigen::MatrixXd J = 2.0 * alpha * k.mu() * Eigen::RowVectorXd::Ones(n) -
                        alpha * P.transpose() -
                        (alpha + 1.0) * Eigen::MatrixXd::Identity(n, n);
    return J;
}

Eigen::VectorXd jacobian_eigenvalues(const Spectrum& s, double alpha) {
    validate_alpha(alpha);
    const int n = static_cast<int>(s.lambda.size());
    Eigen::VectorXd zeta(n);
    for (int i = 0; i < n - 1; ++i) zeta[i] = alpha * (-1.0 - s.lambda[i]) - 1.0;
    zeta[n - 1] = -1.0;
    return zeta;
}

Eigen::MatrixXd jacobian_fd(const ReversibleKernel& k, double alpha, double step) {
    validate_alpha(alpha);
    if (!(step >= 1e-7 && step <= 1e-3))
        throw DomainError("jacobian_fd: step must lie in [1e-7, 1e-3]");
    const int n = k.node_count();
    const double delta = std::min(step, k.mu().minCoeff() / 10.0);
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd xp = k.mu();
        Eigen::VectorXd xm = k.mu();
        xp[j] += delta;
        xm[j] -= delta;
        J.col(j) = (drift(k, xp, alpha) - drift(k, xm, alpha)) / (2.0 * delta);
    }
    return J;
}

} // namespace srrw
