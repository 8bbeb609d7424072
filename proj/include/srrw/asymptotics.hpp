#pragma once

#include <Eigen/Dense>
#include <utility>

#include "srrw/chain.hpp"

namespace srrw {

// Asymptotic covariance of the scaled empirical measure sqrt(n)(x_n - mu).
// In the eigenbasis of the base chain,
//
//   V(alpha) = sum_{i < N-1} [1 / (2 alpha (1 + lambda_i) + 1)]
//                            [(1 + lambda_i) / (1 - lambda_i)] u_i u_i^T ,
//
// where u_i are the left eigenvectors; V(0) = U is the base-chain CLT
// covariance and every coefficient shrinks strictly with alpha, so sampling
// variance decreases at rate O(1/alpha) in every direction.

struct AsymptoticCovariance {
    double alpha = 0.0;
    // Coefficient c_i per non-top eigendirection, aligned with the spectrum's
    // ascending eigenvalue order (size N-1).
    Eigen::VectorXd coeff;
    Eigen::MatrixXd matrix;
    // Set when alpha < 0: outside the stated variance theory, computed
    // anyway while 2 alpha (1 + lambda_i) + 1 stays positive.
    bool out_of_theory = false;
};

// U = V(0). Throws NumericError when the chain is non-ergodic
// (lambda_{N-2} within 1e-10 of 1). Eigenvalues within 1e-12 of -1 have
// their (1 + lambda) factor clamped to zero.
AsymptoticCovariance covariance_U(const Spectrum& s);

// V(alpha) in closed form. For alpha < 0 the result is flagged
// out_of_theory; if some 2 alpha (1 + lambda_i) + 1 <= 0 the request is
// rejected with DomainError.
AsymptoticCovariance covariance_V(const Spectrum& s, double alpha);

// Independent evaluation of V(alpha) as the time integral
// int_0^inf e^{t(J + I/2)} U e^{t(J + I/2)^T} dt by composite Simpson
// quadrature with the given step. The horizon is chosen from an exponential
// tail bound driven by the numerically computed eigenvalues of J + I/2; an
// unattainable horizon or a non-Hurwitz J + I/2 throws NumericError.
AsymptoticCovariance covariance_V_integral(const ReversibleKernel& k, const Spectrum& s,
                                           double alpha, double quad_step = 0.01);

// Minimum eigenvalue of (V_b - V_a) restricted to the zero-sum subspace
// {x : 1^T x = 0}, where both matrices are singular by construction.
// Positive when V_a < V_b in the Loewner order on that subspace.
double loewner_gap(const Eigen::MatrixXd& V_a, const Eigen::MatrixXd& V_b);

// g^T V g: asymptotic variance of the ergodic estimator of g.
double sampling_variance(const Eigen::VectorXd& g, const AsymptoticCovariance& V);

// Variance-reduction pair for a test function g:
//   bound = E[1 / (2 alpha (1 + Lambda) + 1)] with P(Lambda = lambda_i)
//           proportional to (g^T u_i)^2,
//   ratio = g^T V(alpha) g / g^T V(0) g.
// ratio <= bound always; both equal 1 at alpha = 0. Throws DomainError when
// g is constant on the graph (every g^T u_i = 0, so Lambda is undefined).
std::pair<double, double> reduction_bound(const Eigen::VectorXd& g, const Spectrum& s,
                                          double alpha);

} // namespace srrw
