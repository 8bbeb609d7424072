#pragma once

#include <Eigen/Dense>

#include "srrw/chain.hpp"

namespace srrw {

// Self-repellent transition kernel driven by an empirical measure x:
//
//   K_ij[x] = P_ij (x_j / mu_j)^{-alpha} / sum_k P_ik (x_k / mu_k)^{-alpha}
//
// with polynomial repellence exponent alpha. Nodes visited more often than
// their target share become proportionally less attractive (alpha > 0), and
// the polynomial family makes the kernel invariant to the scale of x, so any
// raw positive vector (for instance a visit-count vector) is an acceptable
// argument. Exponentials are evaluated in log space with a max shift, which
// keeps rows finite for arbitrarily large alpha * |log(x_i/mu_i)|.

struct RepellenceParams {
    double alpha = 1.0;
};

// Validates alpha: finite and > -0.5. Values in (-0.5, 0) give a
// self-attracting walk; simulation supports them, while the variance theory
// reported by the asymptotics module is stated for alpha >= 0.
void validate_alpha(double alpha);

// Row i of K[x] as a dense length-N probability vector; support equals the
// support of row i of P. Throws DomainError when some x_j <= 0 meets
// P_ij > 0. alpha = 0 returns row i of P unchanged.
Eigen::VectorXd kernel_row(const ReversibleKernel& k, const Eigen::VectorXd& x, int i,
                           double alpha);

// Stationary distribution of K[x] for frozen x, in closed form:
//
//   pi_i(x) proportional to sum_j mu_i P_ij (x_i/mu_i)^{-alpha} (x_j/mu_j)^{-alpha}
//
// K[x] satisfies detailed balance with respect to pi(x). alpha = 0 returns mu.
Eigen::VectorXd stationary_of(const ReversibleKernel& k, const Eigen::VectorXd& x,
                              double alpha);

// Draws the next node from row i of K[x] by inverse CDF over the cumulative
// row sums in ascending node order, consuming a single uniform u in [0,1).
int sample_next(const ReversibleKernel& k, const Eigen::VectorXd& x, int i, double alpha,
                double u);

// max_ij |K_ij[c x] - K_ij[x]|; zero up to roundoff for the polynomial family.
double verify_scale_invariance(const ReversibleKernel& k, const Eigen::VectorXd& x,
                               double alpha, double c);

namespace detail {

// Shared stabilized evaluation of the unnormalized stationary weights
// f_i = mu_i (x_i/mu_i)^{-alpha} sum_j P_ij (x_j/mu_j)^{-alpha}.
// Writes pi = f / sum(f) and returns log sum(f) (the log Lyapunov value);
// the caller exponentiates if it needs w itself.
double stationary_core(const ReversibleKernel& k, const Eigen::VectorXd& x, double alpha,
                       Eigen::VectorXd& pi_out);

// Hot-loop sampler over row support. logdev must hold log(x_j) - log(mu_j)
// per node (any common additive offset is harmless, by scale invariance).
int sample_support(const ReversibleKernel& k, const Eigen::VectorXd& logdev, int i,
                   double alpha, double u);

} // namespace detail

} // namespace srrw
