#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "srrw/graph.hpp"

namespace srrw {

// Time-homogeneous reversible transition kernel P with target distribution mu
// (mu_i P_ij = mu_j P_ji). Rows are stored sparsely in ascending column
// order, diagonal included whenever P_ii > 0; simulation touches only rows,
// dense algebra materializes the full matrix on demand.
class ReversibleKernel {
public:
    struct RowEntry {
        int j;
        double p;
    };

    int node_count() const { return static_cast<int>(rows_.size()); }
    const std::vector<RowEntry>& row(int i) const;
    const Eigen::VectorXd& mu() const { return mu_; }
    const Eigen::VectorXd& log_mu() const { return log_mu_; }

    // False when the chain has period 2 (connected support, no holding
    // probability, bipartite); reversible chains admit no other period.
    bool aperiodic() const { return aperiodic_; }

    Eigen::MatrixXd dense() const;

    // P_ij; zero off-support. Out-of-range ids throw DomainError.
    double entry(int i, int j) const;

private:
    std::vector<std::vector<RowEntry>> rows_;
    Eigen::VectorXd mu_;
    Eigen::VectorXd log_mu_;
    bool aperiodic_ = false;

    friend ReversibleKernel kernel_from_rows(std::vector<std::vector<RowEntry>>,
                                             Eigen::VectorXd, bool);
};

// Simple random walk: P_ij = w_ij / deg(i), mu_i = deg(i) / sum_k deg(k).
// Requires a connected graph.
ReversibleKernel build_srw(const Graph& g);

// Metropolis-Hastings walk over the SRW proposal, targeting the given
// positive distribution (normalized internally; empty means uniform).
// Rejection mass accumulates on the diagonal.
ReversibleKernel build_mhrw(const Graph& g, const Eigen::VectorXd& target = {});

// Builds a kernel from an explicit row-stochastic matrix. Rows must sum to 1
// within 1e-12 and entries must be nonnegative. When check_dbe is set, a
// detailed-balance violation above 1e-12 throws NumericError; tests disable
// the check to construct deliberately broken kernels.
ReversibleKernel kernel_from_dense(const Eigen::MatrixXd& P, const Eigen::VectorXd& mu,
                                   bool check_dbe = true);

// Maximum detailed-balance residual max_ij |mu_i P_ij - mu_j P_ji|.
double verify_dbe(const ReversibleKernel& k);

// Eigendecomposition of P. Eigenvalues are real and ascending with
// lambda_{N-1} = 1; column k of U / V holds the left / right eigenvector for
// lambda_k, scaled so that U = D_mu V and U^T V = I. The top pair is then
// u = mu, v = 1. Signs are fixed by making the largest-magnitude entry of
// each right eigenvector positive (first such index on ties).
struct Spectrum {
    Eigen::VectorXd lambda;
    Eigen::MatrixXd U;
    Eigen::MatrixXd V;
    Eigen::VectorXd mu;
};

// Computes the spectrum through the symmetrization S = D^{1/2} P D^{-1/2},
// which is symmetric exactly when detailed balance holds; a symmetrization
// residual above 1e-8 throws NumericError.
Spectrum compute_spectrum(const ReversibleKernel& k);

// Second-largest eigenvalue modulus max(|lambda_0|, |lambda_{N-2}|).
// Throws NumericError when the chain is non-ergodic (lambda_0 = -1 or
// lambda_{N-2} = 1 within 1e-10).
double slem(const Spectrum& s);
bool ergodic(const Spectrum& s);

// Kernel dump: (i, j, P_ij) triples plus a separate mu vector file, and the
// inverse load. load_kernel_csv validates rows and detailed balance.
void write_kernel_csv(const ReversibleKernel& k, const std::string& kernel_path,
                      const std::string& mu_path);
ReversibleKernel load_kernel_csv(const std::string& kernel_path, const std::string& mu_path);

// Spectrum dump: (index, lambda) pairs plus dense eigenvector matrices.
void write_spectrum_csv(const Spectrum& s, const std::string& lambda_path,
                        const std::string& u_path, const std::string& v_path);

} // namespace srrw
