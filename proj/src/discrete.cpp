#include "thresholdscope/discrete.hpp"

#include <Eigen/Dense>
#include <random>

namespace thresholdscope {

MatrixXcd shift_resolvent(Eigen::Index n, cplx z) {
    if (n < 1) throw DomainError("shift_resolvent: n must be >= 1");
    if (!(std::abs(z) > 1.0)) throw DomainError("shift_resolvent: requires |z| > 1");
    MatrixXcd R = MatrixXcd::Zero(n, n);
    // Entry (i, j) = -z^{-1-(j-i)} for j >= i: constant along diagonals.
    std::vector<cplx> diag(static_cast<size_t>(n));
    cplx p = 1.0 / z;
    for (Eigen::Index k = 0; k < n; ++k) {
        diag[static_cast<size_t>(k)] = -p;
        p /= z;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) R(i, j) = diag[static_cast<size_t>(j - i)];
    if (shift_resolvent_defect(R, z) > 1e-12)
        throw NonConvergence("shift_resolvent: truncation identity violated");
    return R;
}

double shift_resolvent_defect(const MatrixXcd& R, cplx z) {
    const Eigen::Index n = R.rows();
    double worst = 0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            // Row i of (L - z I) R = R(i+1, :) - z R(i, :).
            cplx v = R(i + 1, j) - z * R(i, j);
            cplx expect = (i == j) ? cplx(1.0) : cplx(0.0);
            worst = std::max(worst, std::abs(v - expect));
        }
    }
    return worst;
}

ShiftModel engineered_virtual_state(Eigen::Index n, cplx z0,
                                    const std::function<double(Eigen::Index)>& phi,
                                    Eigen::Index tail_terms) {
    if (n < 2) throw DomainError("engineered_virtual_state: n must be >= 2");
    if (std::abs(std::abs(z0) - 1.0) > 1e-12)
        throw DomainError("engineered_virtual_state: z0 must lie on the unit circle");

    ShiftModel model;
    model.n = n;
    model.z0 = z0;
    model.phi.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) model.phi(i) = phi(i + 1);
    if (std::abs(model.phi(0)) == 0)
        throw DomainError("engineered_virtual_state: phi_1 must be nonzero");

    // Psi over an extended range by the backward recurrence
    // Psi_i = (Psi_{i+1} - phi_i) / z0, seeded far beyond the truncation.
    const Eigen::Index N = std::max<Eigen::Index>(tail_terms, 64 * n);
    bool finite_support = true;
    for (Eigen::Index i = n; i < std::min(N, n + 1000); ++i)
        if (phi(i + 1) != 0.0) finite_support = false;
    model.degenerate = finite_support;

    VectorXcd Psi_ext(n + 1);
    {
        cplx psi_next = 0.0;  // Psi_{N+1} ~ 0, error below sum_{k>N} |phi_k|
        for (Eigen::Index i = N; i >= 1; --i) {
            cplx psi_i = (psi_next - phi(i)) / z0;
            if (i <= n + 1) Psi_ext(i - 1) = psi_i;
            psi_next = psi_i;
        }
    }
    model.Psi = Psi_ext.head(n);

    double tail = 0;
    for (Eigen::Index i = n + 1; i <= N; ++i) tail += std::abs(phi(i));
    model.predicted_tail = tail;

    // A = L - K (L - z0 I), K = phi (xi, .) with xi = e_1 / phi_1.
    MatrixXcd L = MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) L(i, i + 1) = 1.0;
    Eigen::RowVectorXcd rho = Eigen::RowVectorXcd::Zero(n);
    rho(0) = -z0 / model.phi(0);
    if (n > 1) rho(1) = 1.0 / model.phi(0);
    model.A = L - model.phi * rho;

    VectorXcd defect = model.A * model.Psi - z0 * model.Psi;
    model.residual = defect.lpNorm<Eigen::Infinity>();
    return model;
}

int svd_nullity(const MatrixXcd& M, double rel_tol) {
    Eigen::JacobiSVD<MatrixXcd> svd(M);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    double top = s(0);
    int nullity = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) <= rel_tol * std::max(top, 1e-300)) ++nullity;
    return nullity;
}

namespace {

bool invertible_after(const MatrixXcd& M, const MatrixXcd& N) {
    MatrixXcd S = M + N;
    Eigen::FullPivLU<MatrixXcd> lu(S);
    // |det| > tol_det with a scale-aware threshold, realized through the
    // pivot ratio of the LU factorization.
    const auto& U = lu.matrixLU();
    double top = 0, bottom = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        double p = std::abs(U(i, i));
        top = std::max(top, p);
        bottom = std::min(bottom, p);
    }
    if (top == 0) return false;
    return bottom > 1e-10 * top;
}

}  // namespace

int min_rank_regularizer(const MatrixXcd& M, int trials, unsigned seed) {
    if (M.rows() != M.cols()) throw DomainError("min_rank_regularizer: matrix must be square");
    const Eigen::Index n = M.rows();
    if (n > 12) throw DomainError("min_rank_regularizer: supported up to n = 12");
    const double scale = M.norm() + 1.0;

    for (int rerun = 0; rerun < 2; ++rerun) {
        std::mt19937 rng(seed + 1000003u * static_cast<unsigned>(rerun));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int r = 0; r <= int(n); ++r) {
            int ok = 0;
            for (int t = 0; t < trials; ++t) {
                MatrixXcd N = MatrixXcd::Zero(n, n);
                for (int k = 0; k < r; ++k) {
                    VectorXcd u(n), v(n);
                    for (Eigen::Index i = 0; i < n; ++i) {
                        u(i) = cplx(gauss(rng), gauss(rng));
                        v(i) = cplx(gauss(rng), gauss(rng));
                    }
                    N += u * v.adjoint();
                }
                if (r > 0) N *= scale / N.norm();
                if (invertible_after(M, N)) ++ok;
            }
            if (r == 0 && ok == trials) return 0;
            if (r > 0 && ok > trials / 2) {
                if (ok == trials || ok > (3 * trials) / 4) return r;
                // Split vote: try once more with a fresh seed.
                break;
            }
        }
    }
    throw Inconclusive("min_rank_regularizer: trials disagree after reseeding");
}

}  // namespace thresholdscope
