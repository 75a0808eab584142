#pragma once

#include <Eigen/Dense>

#include "thresholdscope/types.hpp"

namespace thresholdscope {

/// Largest singular value of M by power iteration on M^H M.
inline double top_singular_value(const MatrixXcd& M, Tolerance tol = {}) {
    if (M.size() == 0) return 0.0;
    if (!M.allFinite()) throw DomainError("top_singular_value: non-finite entries");
    const Eigen::Index n = M.cols();
    // Deterministic start with a mild spread across components.
    VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cplx(1.0 + 0.37 * std::cos(double(i)), 0.19 * std::sin(2.3 * double(i) + 0.5));
    v.normalize();

    double sigma = 0.0, sigma_prev = -1.0;
    int max_it = std::min(tol.max_iter, 100000);
    for (int it = 0; it < max_it; ++it) {
        VectorXcd u = M * v;
        VectorXcd w = M.adjoint() * u;
        double nw = w.norm();
        if (nw == 0) return 0.0;
        v = w / nw;
        sigma = std::sqrt(nw);
        if (sigma_prev >= 0 &&
            std::abs(sigma - sigma_prev) <= tol.rel * std::max(sigma, 1e-300))
            return sigma;
        sigma_prev = sigma;
    }
    throw NonConvergence("top_singular_value: power iteration did not converge");
}

/// Least-squares slope of y against x.
inline double lsq_slope(const ArrayXd& x, const ArrayXd& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("lsq_slope: need >= 2 matched samples");
    double mx = x.mean(), my = y.mean();
    double sxx = ((x - mx) * (x - mx)).sum();
    if (sxx == 0) throw DomainError("lsq_slope: degenerate abscissae");
    return ((x - mx) * (y - my)).sum() / sxx;
}

/// Slope and intercept of the least-squares line y = a*x + b.
inline std::pair<double, double> lsq_fit(const ArrayXd& x, const ArrayXd& y) {
    double a = lsq_slope(x, y);
    return {a, y.mean() - a * x.mean()};
}

}  // namespace thresholdscope
