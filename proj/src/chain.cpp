#include "srrw/chain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "srrw/csv.hpp"
#include "srrw/errors.hpp"

namespace srrw {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kDbeTol = 1e-12;
constexpr double kSymTol = 1e-8;
constexpr double kErgodicTol = 1e-10;

// Period of a connected reversible chain is 1 or 2; it is 2 exactly when no
// state holds and the support graph is bipartite.
bool support_aperiodic(const std::vector<std::vector<ReversibleKernel::RowEntry>>& rows) {
    const int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i)
        for (const auto& e : rows[static_cast<std::size_t>(i)])
            if (e.j == i && e.p > 0.0) return true;
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    color[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const auto& e : rows[static_cast<std::size_t>(u)]) {
            if (color[static_cast<std::size_t>(e.j)] == -1) {
                color[static_cast<std::size_t>(e.j)] = 1 - color[static_cast<std::size_t>(u)];
                q.push(e.j);
            } else if (color[static_cast<std::size_t>(e.j)] ==
                       color[static_cast<std::size_t>(u)]) {
                return true; // odd cycle
            }
        }
    }
    return false;
}

} // namespace

ReversibleKernel kernel_from_rows(std::vector<std::vector<ReversibleKernel::RowEntry>> rows,
                                  Eigen::VectorXd mu, bool check_dbe) {
    const int n = static_cast<int>(rows.size());
    if (n < 2) throw DomainError("kernel: need at least two states");
    if (mu.size() != n) throw DomainError("kernel: mu length mismatch");
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(mu[i] > 0.0)) throw DomainError("kernel: mu must be positive");
        mass += mu[i];
    }
    ReversibleKernel k;
    k.mu_ = mu / mass;
    k.log_mu_ = k.mu_.array().log();
    for (int i = 0; i < n; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.j < b.j; });
        double s = 0.0;
        for (const auto& e : row) {
            if (e.j < 0 || e.j >= n) throw DomainError("kernel: column out of range");
            if (!(e.p > 0.0)) throw DomainError("kernel: row entries must be positive");
            s += e.p;
        }
        if (row.empty() || std::abs(s - 1.0) > kRowSumTol)
            throw DomainError("kernel: row " + std::to_string(i) + " does not sum to 1");
    }
    k.rows_ = std::move(rows);
    k.aperiodic_ = support_aperiodic(k.rows_);
    if (check_dbe) {
        double r = verify_dbe(k);
        if (r > kDbeTol)
            throw NumericError("kernel: detailed balance violated, residual " +
                               std::to_string(r));
    }
    return k;
}

const std::vector<ReversibleKernel::RowEntry>& ReversibleKernel::row(int i) const {
    if (i < 0 || i >= node_count()) throw DomainError("kernel: node id out of range");
    return rows_[static_cast<std::size_t>(i)];
}

Eigen::MatrixXd ReversibleKernel::dense() const {
    const int n = node_count();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (const auto& e : rows_[static_cast<std::size_t>(i)]) P(i, e.j) = e.p;
    return P;
}

double ReversibleKernel::entry(int i, int j) const {
    const auto& r = row(i);
    if (j < 0 || j >= node_count()) throw DomainError("kernel: node id out of range");
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const RowEntry& e, int col) { return e.j < col; });
    return (it != r.end() && it->j == j) ? it->p : 0.0;
}

ReversibleKernel build_srw(const Graph& g) {
    if (!g.connected()) throw DomainError("build_srw: graph must be connected");
    const int n = g.node_count();
    std::vector<std::vector<ReversibleKernel::RowEntry>> rows(static_cast<std::size_t>(n));
    Eigen::VectorXd mu(n);
    for (int i = 0; i < n; ++i) {
        const double d = g.degree(i);
        mu[i] = d / g.degree_total();
        for (const auto& [j, w] : g.neighbors(i))
            rows[static_cast<std::size_t>(i)].push_back({j, w / d});
    }
    return kernel_from_rows(std::move(rows), std::move(mu), true);
}

ReversibleKernel build_mhrw(const Graph& g, const Eigen::VectorXd& target) {
    if (!g.connected()) throw DomainError("build_mhrw: graph must be connected");
    const int n = g.node_count();
    Eigen::VectorXd mu;
    if (target.size() == 0) {
        mu = Eigen::VectorXd::Constant(n, 1.0 / n);
    } else {
        if (target.size() != n) throw DomainError("build_mhrw: target length mismatch");
        for (int i = 0; i < n; ++i)
            if (!(target[i] > 0.0)) throw DomainError("build_mhrw: target must be positive");
        mu = target / target.sum();
    }
    std::vector<std::vector<ReversibleKernel::RowEntry>> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        for (const auto& [j, w] : g.neighbors(i)) {
            const double qf = w / g.degree(i);
            const double qr = w / g.degree(j);
            double p;
            if (mu[i] == mu[j]) {
                // Equal targets reduce the acceptance ratio to a pure
                // proposal comparison; keep that case exact.
                p = std::min(qf, qr);
            } else {
                const double fwd = mu[i] * qf;
                const double rev = mu[j] * qr;
                p = rev >= fwd ? qf : rev / mu[i];
            }
            rows[static_cast<std::size_t>(i)].push_back({j, p});
            off += p;
        }
        if (1.0 - off > 1e-15) rows[static_cast<std::size_t>(i)].push_back({i, 1.0 - off});
    }
    return kernel_from_rows(std::move(rows), std::move(mu), true);
}

ReversibleKernel kernel_from_dense(const Eigen::MatrixXd& P, const Eigen::VectorXd& mu,
                                   bool check_dbe) {
    if (P.rows() != P.cols() || P.rows() != mu.size())
        throw DomainError("kernel_from_dense: shape mismatch");
    const int n = static_cast<int>(P.rows());
    std::vector<std::vector<ReversibleKernel::RowEntry>> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (P(i, j) < 0.0) throw DomainError("kernel_from_dense: negative entry");
            if (P(i, j) > 0.0) rows[static_cast<std::size_t>(i)].push_back({j, P(i, j)});
        }
    return kernel_from_rows(std::move(rows), mu, check_dbe);
}

double verify_dbe(const ReversibleKernel& k) {
    double worst = 0.0;
    for (int i = 0; i < k.node_count(); ++i)
        for (const auto& e : k.row(i)) {
            const double r = std::abs(k.mu()[i] * e.p - k.mu()[e.j] * k.entry(e.j, i));
            worst = std::max(worst, r);
        }
    return worst;
}

Spectrum compute_spectrum(const ReversibleKernel& k) {
    const int n = k.node_count();
    const Eigen::MatrixXd P = k.dense();
    const Eigen::VectorXd sq = k.mu().array().sqrt();
    Eigen::MatrixXd S = sq.asDiagonal() * P * sq.cwiseInverse().asDiagonal();
    const double res = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (res > kSymTol)
        throw NumericError("compute_spectrum: reversibility failure, residual " +
                           std::to_string(res));
    S = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success)
        throw NumericError("compute_spectrum: eigensolver failed to converge");

    Spectrum sp;
    sp.lambda = es.eigenvalues();
    sp.mu = k.mu();
    sp.U.resize(n, n);
    sp.V.resize(n, n);
    for (int c = 0; c < n; ++c) {
        Eigen::VectorXd s = es.eigenvectors().col(c);
        Eigen::VectorXd v = s.cwiseQuotient(sq);
        int arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0.0) {
            s = -s;
            v = -v;
        }
        sp.V.col(c) = v;
        sp.U.col(c) = s.cwiseProduct(sq);
    }
    return sp;
}

bool ergodic(const Spectrum& s) {
    const int n = static_cast<int>(s.lambda.size());
    if (n < 2) return false;
    return s.lambda[0] > -1.0 + kErgodicTol && s.lambda[n - 2] < 1.0 - kErgodicTol;
}

double slem(const Spectrum& s) {
    if (!ergodic(s)) throw NumericError("slem: chain is not ergodic");
    const int n = static_cast<int>(s.lambda.size());
    return std::max(std::abs(s.lambda[0]), std::abs(s.lambda[n - 2]));
}

void write_kernel_csv(const ReversibleKernel& k, const std::string& kernel_path,
                      const std::string& mu_path) {
    CsvWriter kc(kernel_path);
    kc.row("i", "j", "p");
    for (int i = 0; i < k.node_count(); ++i)
        for (const auto& e : k.row(i)) kc.row(i, e.j, e.p);
    CsvWriter mc(mu_path);
    mc.row("i", "mu");
    for (int i = 0; i < k.node_count(); ++i) mc.row(i, k.mu()[i]);
}

ReversibleKernel load_kernel_csv(const std::string& kernel_path, const std::string& mu_path) {
    auto mu_rows = read_csv(mu_path, 2);
    const int n = static_cast<int>(mu_rows.size());
    if (n < 2) throw ParseError("kernel mu file: need at least two states");
    Eigen::VectorXd mu(n);
    for (const auto& r : mu_rows) {
        const int i = parse_int(r[0], "kernel mu file");
        if (i < 0 || i >= n) throw ParseError("kernel mu file: index out of range");
        mu[i] = parse_double(r[1], "kernel mu file");
    }
    std::vector<std::vector<ReversibleKernel::RowEntry>> rows(static_cast<std::size_t>(n));
    for (const auto& r : read_csv(kernel_path, 3)) {
        const int i = parse_int(r[0], "kernel file");
        const int j = parse_int(r[1], "kernel file");
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw ParseError("kernel file: index out of range");
        rows[static_cast<std::size_t>(i)].push_back({j, parse_double(r[2], "kernel file")});
    }
    return kernel_from_rows(std::move(rows), std::move(mu), true);
}

void write_spectrum_csv(const Spectrum& s, const std::string& lambda_path,
                        const std::string& u_path, const std::string& v_path) {
    CsvWriter lc(lambda_path);
    lc.row("index", "lambda");
    for (int i = 0; i < s.lambda.size(); ++i) lc.row(i, s.lambda[i]);
    write_matrix_csv(u_path, s.U);
    write_matrix_csv(v_path, s.V);
}

} // namespace srrw
