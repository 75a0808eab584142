#include "thresholdscope/lapnorm.hpp"

#include "thresholdscope/linalg.hpp"

namespace thresholdscope {

namespace {

/// Quadrature weights against the kernel's measure.
ArrayXd measure_weights(const KernelHandle& K, const Grid& grid) {
    ArrayXd w = grid.weights;
    if (K.measure == KernelMeasure::radial2d) w *= grid.nodes;
    return w;
}

Grid coarsen(const Grid& grid) {
    std::vector<double> nodes;
    for (Eigen::Index i = 0; i < grid.size(); i += 2) nodes.push_back(grid.nodes(i));
    if (nodes.back() != grid.back()) nodes.push_back(grid.back());
    ArrayXd x = Eigen::Map<ArrayXd>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
    ArrayXd w = ArrayXd::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        double h = x(i + 1) - x(i);
        w(i) += h / 2;
        w(i + 1) += h / 2;
    }
    return Grid(std::move(x), std::move(w));
}

double norm_on_grid(const KernelHandle& K, const WeightPair& wp, const Grid& grid) {
    const Eigen::Index N = grid.size();
    ArrayXd q = measure_weights(K, grid);

    if (K.measure == KernelMeasure::halfline3d) {
        for (Eigen::Index i = 0; i < N; ++i)
            if (!(grid.nodes(i) > 0))
                throw DomainError("weighted_norm: half-line norms require a radial grid");
    }
    const auto& ker = K.norm_eval ? K.norm_eval : K.eval;
    auto kernel = [&](Eigen::Index i, Eigen::Index j) {
        return ker(grid.nodes(i), grid.nodes(j));
    };

    switch (wp.space_tag) {
        case SpaceTag::L2s_to_L2ms: {
            MatrixXcd M(N, N);
            for (Eigen::Index i = 0; i < N; ++i) {
                double wi = std::sqrt(q(i)) * std::pow(jbracket(grid.nodes(i)), -wp.sprime);
                for (Eigen::Index j = 0; j < N; ++j) {
                    double wj = std::sqrt(q(j)) * std::pow(jbracket(grid.nodes(j)), -wp.s);
                    M(i, j) = wi * kernel(i, j) * wj;
                }
            }
            return top_singular_value(M, Tolerance{1e-9, 1e-12, 20000});
        }
        case SpaceTag::L1_to_L2ms: {
            double best = 0;
            for (Eigen::Index j = 0; j < N; ++j) {
                double acc = 0;
                for (Eigen::Index i = 0; i < N; ++i) {
                    double wgt = q(i) * std::pow(jbracket(grid.nodes(i)), -2.0 * wp.sprime);
                    acc += wgt * std::norm(kernel(i, j));
                }
                best = std::max(best, std::sqrt(acc));
            }
            return best;
        }
        case SpaceTag::L2s_to_Linf: {
            double best = 0;
            for (Eigen::Index i = 0; i < N; ++i) {
                double acc = 0;
                for (Eigen::Index j = 0; j < N; ++j) {
                    double wgt = q(j) * std::pow(jbracket(grid.nodes(j)), -2.0 * wp.s);
                    acc += wgt * std::norm(kernel(i, j));
                }
                best = std::max(best, std::sqrt(acc));
            }
            return best;
        }
    }
    throw DomainError("weighted_norm: unknown space tag");
}

}  // namespace

NormEstimate weighted_norm(const KernelHandle& K, const WeightPair& w, const Grid& grid,
                           double coarse_gap_limit) {
    NormEstimate est;
    est.value = norm_on_grid(K, w, grid);
    est.coarse = norm_on_grid(K, w, coarsen(grid));
    est.rel_gap = std::abs(est.value - est.coarse) / std::max(est.value, 1e-300);
    est.refined = est.value + (est.value - est.coarse) / 3.0;
    if (est.rel_gap > coarse_gap_limit)
        throw GridTooCoarse("weighted_norm: two-resolution estimates differ by > 10%");
    return est;
}

NormSweep lap_sweep(const KernelFactory& factory, cplx z0,
                    const std::vector<SpectralPoint>& path, const WeightPair& w,
                    const Grid& grid) {
    if (path.size() < 3) throw DomainError("lap_sweep: need at least 3 path points");
    NormSweep sweep;
    sweep.path = path;
    sweep.z0 = z0;
    for (const auto& sp : path) {
        KernelHandle K = factory(sp);
        NormEstimate est = weighted_norm(K, w, grid);
        sweep.norms.push_back(est.value);
        sweep.grid_resolutions.push_back(grid.size());
    }
    const size_t n = sweep.norms.size();
    ArrayXd lx(3), ly(3);
    for (size_t k = 0; k < 3; ++k) {
        size_t i = n - 3 + k;
        lx(Eigen::Index(k)) = std::log(std::abs(path[i].z - z0));
        ly(Eigen::Index(k)) = std::log(sweep.norms[i]);
    }
    auto [slope, intercept] = lsq_fit(lx, ly);
    sweep.fit_exponent = slope;
    sweep.fit_prefactor = std::exp(intercept);

    double lo = sweep.norms[n - 3], hi = lo;
    for (size_t i = n - 3; i < n; ++i) {
        lo = std::min(lo, sweep.norms[i]);
        hi = std::max(hi, sweep.norms[i]);
    }
    sweep.tail_variation = hi / lo - 1.0;

    if (sweep.tail_variation < 0.20 && slope > -0.1) {
        sweep.classification = SweepClass::uniformly_bounded;
    } else {
        // Distinguish a power law from logarithmic growth by the better fit.
        const Eigen::Index m = Eigen::Index(n);
        ArrayXd gx = ArrayXd::Zero(m), gy = ArrayXd::Zero(m), glog = ArrayXd::Zero(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            gx(i) = std::log(std::abs(path[size_t(i)].z - z0));
            gy(i) = std::log(sweep.norms[size_t(i)]);
            glog(i) = sweep.norms[size_t(i)];
        }
        auto [ap, bp] = lsq_fit(gx, gy);
        auto [al, bl] = lsq_fit(gx, glog);
        double res_pow = 0, res_log = 0;
        for (Eigen::Index i = 0; i < gx.size(); ++i) {
            res_pow += std::pow(gy(i) - (ap * gx(i) + bp), 2) / std::max(1e-30, gy(i) * gy(i));
            res_log +=
                std::pow(glog(i) - (al * gx(i) + bl), 2) / std::max(1e-30, glog(i) * glog(i));
        }
        sweep.classification = (std::abs(ap) < 0.12 && res_log < res_pow)
                                   ? SweepClass::diverging_log
                                   : SweepClass::diverging_power;
    }
    return sweep;
}

std::vector<double> convergence_check(const KernelFactory& factory,
                                      const std::vector<SpectralPoint>& path,
                                      const WeightPair& w, const Grid& grid) {
    if (path.size() < 2) throw DomainError("convergence_check: need >= 2 path points");
    std::vector<KernelHandle> handles;
    handles.reserve(path.size());
    for (const auto& sp : path) handles.push_back(factory(sp));
    const KernelHandle& last = handles.back();

    std::vector<double> diffs;
    for (size_t k = 0; k + 1 < handles.size(); ++k) {
        const KernelHandle& Kk = handles[k];
        KernelHandle D = Kk;
        auto e1 = Kk.norm_eval ? Kk.norm_eval : Kk.eval;
        auto e2 = last.norm_eval ? last.norm_eval : last.eval;
        D.eval = [e1, e2](double x, double y) { return e1(x, y) - e2(x, y); };
        D.norm_eval = nullptr;
        diffs.push_back(norm_on_grid(D, w, grid));
    }
    return diffs;
}

double kernel_sup(const KernelHandle& K, const Grid& grid) {
    double best = 0;
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        for (Eigen::Index j = 0; j < grid.size(); ++j) {
            if (K.family == KernelFamily::free3d && i == j) continue;
            best = std::max(best, std::abs(K.eval(grid.nodes(i), grid.nodes(j))));
        }
    return best;
}

std::vector<SpectralPoint> path_negative_axis(int k_min, int k_max) {
    std::vector<SpectralPoint> path;
    for (int k = k_min; k <= k_max; ++k)
        path.push_back(SpectralPoint::from_z(cplx(-std::pow(10.0, -k), 0.0)));
    return path;
}

std::vector<SpectralPoint> path_upper_half(cplx z0, int k_min, int k_max) {
    std::vector<SpectralPoint> path;
    for (int k = k_min; k <= k_max; ++k)
        path.push_back(SpectralPoint::from_z(z0 + cplx(0.0, std::pow(10.0, -k))));
    return path;
}

std::vector<SpectralPoint> path_imag_zeta(int k_min, int k_max) {
    std::vector<SpectralPoint> path;
    for (int k = k_min; k <= k_max; ++k)
        path.push_back(SpectralPoint::from_zeta(cplx(0.0, std::pow(10.0, -k))));
    return path;
}

}  // namespace thresholdscope
