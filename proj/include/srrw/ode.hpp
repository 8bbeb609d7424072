#pragma once

#include <Eigen/Dense>
#include <vector>

#include "srrw/chain.hpp"

namespace srrw {

// Mean-field flow of the self-repellent walk: dx/dt = pi(x) - x, whose unique
// interior fixed point is mu. The probability simplex is invariant: the drift
// sums to zero and the integrator's positivity guard keeps iterates interior.

// h(x) = pi(x) - x. Accepts raw positive vectors (pi is scale invariant);
// for normalized x the entries sum to 0 within 1e-14.
Eigen::VectorXd drift(const ReversibleKernel& k, const Eigen::VectorXd& x, double alpha);

// Lyapunov value w(x) = sum_ij mu_i P_ij (x_i/mu_i)^{-alpha} (x_j/mu_j)^{-alpha}.
// Equals 1 at x = mu; strictly decreasing along trajectories for alpha > 0
// and strictly increasing for alpha in (-0.5, 0).
double lyapunov(const ReversibleKernel& k, const Eigen::VectorXd& x, double alpha);

// dw/dt along the flow, evaluated two independent ways and cross-checked:
// the analytic gradient dotted with the drift,
//
//   grad_i w = -2 alpha (x_i/mu_i)^{-alpha-1} [P (x/mu)^{-alpha}]_i ,
//
// and the variance form -(2 alpha / w) Var[Z] with Z_i = w pi_i(x) / x_i
// taken with probability x_i. Disagreement beyond 1e-9 relative (with a
// 1e-12 absolute floor) throws NumericError. In the extreme-exponent regime
// where the direct powers are not representable the stabilized variance form
// alone is returned.
double lyapunov_derivative(const ReversibleKernel& k, const Eigen::VectorXd& x,
                           double alpha);

struct OdeTrajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> x; // state at each recorded time
    std::vector<double> w;          // Lyapunov value at each recorded time
};

// Fixed-step RK4 from x0 over [0, T], recording every nominal grid point
// k * dt and the endpoint T. If any RK4 stage or result would leave the
// positive orthant the step is retried at half width (the grid itself is
// unchanged); a substep below 1e-12 throws NumericError.
OdeTrajectory integrate(const ReversibleKernel& k, const Eigen::VectorXd& x0, double alpha,
                        double T, double dt);

// Jacobian of the drift at the fixed point, J(alpha) = 2 alpha mu 1^T
// - alpha P^T - (alpha + 1) I. Its eigenvalues in closed form are
// alpha (-1 - lambda_i) - 1 for each non-top eigenvalue lambda_i of P, and
// -1 for the top pair; all have negative real part for alpha > -0.5.
Eigen::MatrixXd jacobian_at_mu(const ReversibleKernel& k, double alpha);

// Closed-form eigenvalues of J(alpha) aligned with the spectrum's ascending
// eigenvalue order (top pair last).
Eigen::VectorXd jacobian_eigenvalues(const Spectrum& s, double alpha);

// Central-difference Jacobian of the drift around mu with coordinate
// perturbations of width min(step, min_i mu_i / 10). Perturbed vectors stay
// raw and unnormalized, which scale invariance of pi makes legitimate.
// step must lie in [1e-7, 1e-3].
Eigen::MatrixXd jacobian_fd(const ReversibleKernel& k, double alpha, double step);

} // namespace srrw
