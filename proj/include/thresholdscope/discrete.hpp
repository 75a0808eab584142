#pragma once

#include <functional>

#include "thresholdscope/types.hpp"

namespace thresholdscope {

/// Truncation of the resolvent of the left shift on sequences: the
/// upper-triangular matrix with entries -z^{-1-(j-i)} for j >= i, |z| > 1.
MatrixXcd shift_resolvent(Eigen::Index n, cplx z);

/// Max row defect of (L_n - z I) R - I over the non-boundary rows; zero up to
/// roundoff by construction.
double shift_resolvent_defect(const MatrixXcd& R, cplx z);

/// Rank-one-regularized shift with an engineered virtual state at z0 on the
/// unit circle: A = L - K (L - z0 I) with K phi = phi. The state is
/// Psi_i = -sum_{k>=0} z0^{-1-k} phi_{i+k}, computed with its genuine tail and
/// then truncated, so the residual ||(A - z0 I) Psi||_inf tracks the tail of phi.
struct ShiftModel {
    Eigen::Index n = 0;
    cplx z0{};
    MatrixXcd A;
    VectorXcd phi;
    VectorXcd Psi;
    double residual = 0;
    double predicted_tail = 0;  // sum_{j > n} |phi_j|
    bool degenerate = false;    // finitely supported phi: Psi is an eigenvector
};

ShiftModel engineered_virtual_state(Eigen::Index n, cplx z0,
                                    const std::function<double(Eigen::Index)>& phi,
                                    Eigen::Index tail_terms = 2000000);

/// Least r such that a random rank-r perturbation N (scaled to ||N|| ~ ||M||+1)
/// makes M + N invertible, majority-voted over seeded trials; equals the
/// nullity of M for generic draws.
int min_rank_regularizer(const MatrixXcd& M, int trials = 7, unsigned seed = 12345);

/// Nullity through singular values (reference implementation for checks).
int svd_nullity(const MatrixXcd& M, double rel_tol = 1e-10);

}  // namespace thresholdscope
