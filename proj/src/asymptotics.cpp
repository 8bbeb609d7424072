#include "srrw/asymptotics.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "srrw/errors.hpp"
#include "srrw/ode.hpp"
#include "srrw/srrw_kernel.hpp"

namespace srrw {

namespace {

constexpr double kErgodicTol = 1e-10;
constexpr double kLambdaClampTol = 1e-12;

void require_ergodic_top(const Spectrum& s) {
    const int n = static_cast<int>(s.lambda.size());
    if (n < 2 || s.lambda[n - 2] >= 1.0 - kErgodicTol)
        throw NumericError("asymptotic covariance: chain is not ergodic");
}

double one_plus_lambda(double lambda) {
    const double v = 1.0 + lambda;
    return std::abs(v) <= kLambdaClampTol ? 0.0 : v;
}

} // namespace

AsymptoticCovariance covariance_V(const Spectrum& s, double alpha) {
    validate_alpha(alpha);
    require_ergodic_top(s);
    const int n = static_cast<int>(s.lambda.size());
    AsymptoticCovariance out;
    out.alpha = alpha;
    out.out_of_theory = alpha < 0.0;
    out.coeff.resize(n - 1);
    out.matrix = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n - 1; ++i) {
        const double opl = one_plus_lambda(s.lambda[i]);
        const double q = 2.0 * alpha * opl + 1.0;
        if (q <= 0.0)
            throw DomainError("covariance_V: 2 alpha (1 + lambda) + 1 <= 0 at "
                              "eigenvalue " +
                              std::to_string(s.lambda[i]));
        out.coeff[i] = (opl / (1.0 - s.lambda[i])) / q;
        if (out.coeff[i] != 0.0)
            out.matrix.noalias() += out.coeff[i] * s.U.col(i) * s.U.col(i).transpose();
    }
    return out;
}

AsymptoticCovariance covariance_U(const Spectrum& s) {
    return covariance_V(s, 0.0);
}

AsymptoticCovariance covariance_V_integral(const ReversibleKernel& k, const Spectrum& s,
                                           double alpha, double quad_step) {
    validate_alpha(alpha);
    if (!(quad_step > 0.0 && quad_step <= 0.5))
        throw DomainError("covariance_V_integral: quadrature step must lie in (0, 0.5]");
    const Eigen::MatrixXd U = covariance_U(s).matrix;
    const int n = static_cast<int>(U.rows());
    const Eigen::MatrixXd A =
        jacobian_at_mu(k, alpha) + 0.5 * Eigen::MatrixXd::Identity(n, n);

    // Decay rate taken from a generic eigensolve of A, independent of the
    // closed-form spectrum this routine is used to cross-check.
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw NumericError("covariance_V_integral: eigensolver failed");
    const double sigma = es.eigenvalues().real().maxCoeff();
    if (sigma >= -1e-6)
        throw NumericError("covariance_V_integral: J + I/2 is not Hurwitz; the "
                           "integral diverges");

    // ||e^{tA}|| <= kappa e^{sigma t} with kappa the eigenbasis conditioning;
    // the tail past T is below kappa^2 ||U|| e^{2 sigma T} / (-2 sigma).
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(es.eigenvectors().real());
    double kappa = 1.0;
    if (svd.singularValues().minCoeff() > 0.0)
        kappa = std::max(kappa,
                         svd.singularValues().maxCoeff() / svd.singularValues().minCoeff());
    const double unorm = U.cwiseAbs().maxCoeff();
    const double tail_target = 1e-9 * std::max(unorm, 1e-30);
    double horizon =
        std::log(kappa * kappa * unorm / (tail_target * (-2.0 * sigma))) / (-2.0 * sigma);
    horizon = std::max(horizon, 10.0 * quad_step);
    constexpr double kHorizonCap = 500.0;
    if (horizon > kHorizonCap)
        throw NumericError("covariance_V_integral: quadrature horizon insufficient; "
                           "decay rate " +
                           std::to_string(sigma) + " needs T = " + std::to_string(horizon));

    // Composite Simpson on a uniform grid; e^{tA} advances by one fixed
    // matrix factor per node.
    auto intervals = static_cast<long long>(std::ceil(horizon / quad_step));
    if (intervals % 2 != 0) ++intervals;
    const double h = horizon / static_cast<double>(intervals);
    const Eigen::MatrixXd Eh = (A * h).exp();
    Eigen::MatrixXd Ek = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd acc = U; // weight 1 at t = 0
    for (long long m = 1; m <= intervals; ++m) {
        Ek = (Ek * Eh).eval();
        const double wgt = (m == intervals) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
        acc.noalias() += wgt * (Ek * U * Ek.transpose());
    }
    AsymptoticCovariance out;
    out.alpha = alpha;
    out.out_of_theory = alpha < 0.0;
    out.matrix = (h / 3.0) * acc;
    out.coeff.resize(0);
    return out;
}

double loewner_gap(const Eigen::MatrixXd& V_a, const Eigen::MatrixXd& V_b) {
    if (V_a.rows() != V_b.rows() || V_a.cols() != V_b.cols() || V_a.rows() != V_a.cols())
        throw DomainError("loewner_gap: shape mismatch");
    const int n = static_cast<int>(V_a.rows());
    if (n < 2) throw DomainError("loewner_gap: need at least two states");
    // Orthonormal basis of {x : 1^T x = 0} from a QR factorization of 1.
    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
    const Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd B = Q.rightCols(n - 1);
    Eigen::MatrixXd D = B.transpose() * (V_b - V_a) * B;
    D = 0.5 * (D + D.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
    return es.eigenvalues().minCoeff();
}

double sampling_variance(const Eigen::VectorXd& g, const AsymptoticCovariance& V) {
    if (g.size() != V.matrix.rows()) throw DomainError("sampling_variance: g length mismatch");
    return g.dot(V.matrix * g);
}

std::pair<double, double> reduction_bound(const Eigen::VectorXd& g, const Spectrum& s,
                                          double alpha) {
    validate_alpha(alpha);
    require_ergodic_top(s);
    const int n = static_cast<int>(s.lambda.size());
    if (g.size() != n) throw DomainError("reduction_bound: g length mismatch");

    // Unnormalized sums keep the alpha = 0 case exactly 1.
    double s_total = 0.0, bound_num = 0.0, num = 0.0, den = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        const double proj = g.dot(s.U.col(i));
        const double si = proj * proj;
        const double opl = one_plus_lambda(s.lambda[i]);
        const double q = 2.0 * alpha * opl + 1.0;
        if (q <= 0.0)
            throw DomainError("reduction_bound: 2 alpha (1 + lambda) + 1 <= 0");
        const double bi = opl / (1.0 - s.lambda[i]);
        s_total += si;
        bound_num += si / q;
        num += (bi / q) * si;
        den += bi * si;
    }
    if (s_total <= 1e-24 * g.squaredNorm())
        throw DomainError("reduction_bound: g is constant; Lambda is undefined");
    if (den <= 0.0)
        throw DomainError("reduction_bound: asymptotic variance of g vanishes");
    return {bound_num / s_total, num / den};
}

} // namespace srrw
