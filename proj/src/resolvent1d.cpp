#include "thresholdscope/resolvent1d.hpp"

#include <memory>

#include "thresholdscope/lapnorm.hpp"
#include "thresholdscope/roots.hpp"

namespace thresholdscope {

namespace {
const cplx I(0.0, 1.0);
}

KernelHandle make_free1d(cplx z) {
    cplx kappa = std::sqrt(-z);
    if (kappa.real() < 0) kappa = -kappa;
    if (kappa.real() == 0)
        throw DomainError("make_free1d: z on the essential spectrum");
    KernelHandle K;
    K.family = KernelFamily::free1d;
    K.measure = KernelMeasure::line;
    K.sp = SpectralPoint::from_z(z);
    K.wronskian_value = -2.0 * I * K.sp.zeta;
    K.potential = [](double) { return cplx(0); };
    K.eval = [kappa](double x, double y) {
        return std::exp(-std::abs(x - y) * kappa) / (2.0 * kappa);
    };
    return K;
}

KernelHandle make_barrier1d(double g, const SpectralPoint& sp, Tolerance tol) {
    if (barrier_near_branch_point(g, sp.zeta)) {
        KernelHandle K = make_generic1d(Potential::barrier(g), sp, tol);
        K.family = KernelFamily::barrier1d;
        K.g = g;
        return K;
    }
    cplx w = barrier_wronskian_closed_form(g, sp.zeta);
    if (std::abs(w) <= wronskian_tolerance(sp))
        throw WronskianTooSmall("make_barrier1d: spectral point at a Wronskian zero");
    cplx zeta = sp.zeta;
    KernelHandle K;
    K.family = KernelFamily::barrier1d;
    K.measure = KernelMeasure::line;
    K.sp = sp;
    K.g = g;
    K.wronskian_value = w;
    K.first_moment = first_moment(Potential::barrier(g));
    K.potential = [g](double x) { return (std::abs(x) <= 1.0) ? cplx(g) : cplx(0); };
    K.eval = [g, zeta, w](double x, double y) {
        double hi = std::max(x, y), lo = std::min(x, y);
        cplx tp = barrier_theta_plus(g, zeta, hi).first;
        cplx tm = barrier_theta_plus(g, zeta, -lo).first;  // even box: theta_-(x) = theta_+(-x)
        return tp * tm / w;
    };
    return K;
}

KernelHandle make_generic1d(const Potential& V, const SpectralPoint& sp, Tolerance tol,
                            Eigen::Index n) {
    if (n == 0) {
        double lam = std::max(1.0, std::abs(sp.zeta));
        double h = 0.35 * std::pow(384.0 * std::max(tol.abs, tol.rel), 0.25) / lam;
        double L = V.support_radius() + 1.0;
        n = std::clamp<Eigen::Index>(Eigen::Index(std::ceil(2.0 * L / h)), 1201, 160001);
    }
    Grid grid = make_jost_grid(V, 1.0, n);
    auto tp = std::make_shared<JostSolution>(jost_plus(V, sp, grid, tol));
    auto tm = std::make_shared<JostSolution>(jost_minus(V, sp, grid, tol));
    cplx w = tp->value(0.0) * tm->derivative(0.0) - tp->derivative(0.0) * tm->value(0.0);
    if (std::abs(w) <= wronskian_tolerance(sp))
        throw WronskianTooSmall("make_generic1d: spectral point at a Wronskian zero");
    auto Vp = std::make_shared<Potential>(V);
    KernelHandle K;
    K.family = KernelFamily::generic1d;
    K.measure = KernelMeasure::line;
    K.sp = sp;
    K.wronskian_value = w;
    K.first_moment = first_moment(V, tol);
    K.potential = [Vp](double x) { return Vp->eval(x); };
    K.eval = [tp, tm, w](double x, double y) {
        double hi = std::max(x, y), lo = std::min(x, y);
        return tp->value(hi) * tm->value(lo) / w;
    };
    return K;
}

KernelHandle make_free3d(cplx z) {
    cplx kappa = std::sqrt(-z);
    if (kappa.real() < 0) kappa = -kappa;
    if (kappa.real() == 0)
        throw DomainError("make_free3d: z on the essential spectrum");
    KernelHandle K;
    K.family = KernelFamily::free3d;
    K.measure = KernelMeasure::halfline3d;
    K.sp = SpectralPoint::from_z(z);
    K.potential = [](double) { return cplx(0); };
    K.eval = [kappa](double x, double y) {
        double d = std::abs(x - y);
        if (d == 0) throw DomainError("free3d kernel: diagonal singularity");
        return std::exp(-d * kappa) / (4.0 * pi * d);
    };
    // Radial reduction u = r psi: the kernel of (-d_r^2 - z)^{-1} with a
    // Dirichlet condition at r = 0; this is what weighted norms discretize.
    K.norm_eval = [kappa](double r, double s) {
        return (std::exp(-kappa * std::abs(r - s)) - std::exp(-kappa * (r + s))) /
               (2.0 * kappa);
    };
    return K;
}

ApplyResult apply(const KernelHandle& K, const ArrayXcd& f, const Grid& grid, double tol) {
    const Eigen::Index N = grid.size();
    if (f.size() != N) throw DomainError("apply: sample count mismatch");
    ApplyResult out;
    out.u.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        cplx acc = 0;
        for (Eigen::Index j = 0; j < N; ++j)
            acc += grid.weights(j) * K.eval(grid.nodes(i), grid.nodes(j)) * f(j);
        out.u(i) = acc;
    }
    // Second-difference residual away from the kink set of V.
    double fmax = 0;
    for (Eigen::Index i = 0; i < N; ++i) fmax = std::max(fmax, std::abs(f(i)));
    double resid = 0;
    for (Eigen::Index i = 1; i + 1 < N; ++i) {
        double x = grid.nodes(i);
        bool near_kink = false;
        double guard = 1.5 * std::max(grid.nodes(i + 1) - x, x - grid.nodes(i - 1));
        if (K.family == KernelFamily::barrier1d)
            near_kink = std::abs(std::abs(x) - 1.0) < guard;
        if (K.family == KernelFamily::generic1d) {
            // Conservatively skip nodes near any nonzero segment endpoint.
            if (std::abs(K.potential(x + guard) - K.potential(x - guard)) > 1e-12)
                near_kink = true;
        }
        if (near_kink) continue;
        double hp = grid.nodes(i + 1) - x, hm = x - grid.nodes(i - 1);
        cplx d2 = 2.0 * ((out.u(i + 1) - out.u(i)) / hp - (out.u(i) - out.u(i - 1)) / hm) /
                  (hp + hm);
        cplx r = -d2 + (K.potential(x) - K.sp.z) * out.u(i) - f(i);
        resid = std::max(resid, std::abs(r));
    }
    out.residual = resid;
    if (resid > tol * (1.0 + fmax))
        throw ResidualTooLarge("apply: stencil residual exceeds tolerance (grid too coarse)");
    return out;
}

VirtualLevelReport detect_virtual_level(const Potential& V, double z0, Tolerance tol,
                                        bool with_evidence) {
    VirtualLevelReport rep;
    rep.z0 = z0;
    if (!std::isfinite(z0)) {
        rep.classification = LevelClass::excluded;
        return rep;
    }
    const bool below = z0 < 0;
    cplx zeta0 = below ? cplx(0.0, std::sqrt(-z0)) : cplx(std::sqrt(z0), 0.0);
    SpectralPoint sp = SpectralPoint::from_zeta(zeta0);
    cplx w = wronskian(V, sp, tol);
    rep.wronskian_value = w;
    const double tol_w = wronskian_tolerance(sp);
    if (std::abs(w) <= tol_w) {
        rep.classification = below ? LevelClass::bound_state : LevelClass::virtual_level;
        rep.rank = 1;
        Grid grid = make_jost_grid(V, 2.0, 801);
        JostSolution tp = jost_plus(V, sp, grid, tol);
        Eigen::Index imax = 0;
        double vmax = 0;
        for (Eigen::Index i = 0; i < grid.size(); ++i)
            if (std::abs(tp.theta(i)) > vmax) {
                vmax = std::abs(tp.theta(i));
                imax = i;
            }
        cplx c = (vmax > 0) ? 1.0 / tp.theta(imax) : cplx(1.0);
        rep.state_grid = grid;
        rep.virtual_state = (tp.theta * c).eval();
        return rep;
    }
    rep.classification = LevelClass::regular;
    rep.rank = 0;
    if (with_evidence) {
        auto factory = [&](const SpectralPoint& p) { return make_generic1d(V, p, tol, 1201); };
        std::vector<SpectralPoint> path;
        for (int k = 1; k <= 5; ++k) {
            cplx z = (z0 == 0) ? cplx(-std::pow(10.0, -k), 0.0)
                               : cplx(z0, std::pow(10.0, -k));
            path.push_back(SpectralPoint::from_z(z));
        }
        WeightPair wp{1.1, 1.1, SpaceTag::L2s_to_L2ms};
        Grid g = symmetric_grid(V.support_radius() + 10.0, 241);
        rep.evidence = std::make_shared<NormSweep>(lap_sweep(factory, z0, path, wp, g));
    }
    return rep;
}

std::vector<BoundState> bound_states(const Potential& V, double kappa_min, double kappa_max,
                                     Tolerance tol) {
    if (!(kappa_min > 0) || !(kappa_min < kappa_max))
        throw DomainError("bound_states: need 0 < kappa_min < kappa_max");
    auto w_at = [&](double kappa) {
        return wronskian(V, SpectralPoint::from_zeta(cplx(0.0, kappa)), tol);
    };
    const int n_scan = 160;
    std::vector<double> ks(n_scan + 1), av(n_scan + 1);
    std::vector<cplx> wv(n_scan + 1);
    for (int i = 0; i <= n_scan; ++i) {
        ks[i] = kappa_min + (kappa_max - kappa_min) * double(i) / n_scan;
        wv[i] = w_at(ks[i]);
        av[i] = std::abs(wv[i]);
    }
    std::vector<BoundState> found;
    auto refine = [&](double lo, double hi) {
        double kappa;
        try {
            kappa = find_zero([&](double t) { return w_at(t); }, lo, hi,
                              Tolerance{1e-12, 1e-10, 200});
        } catch (const NoRoot&) {
            return;
        }
        cplx w = w_at(kappa);
        SpectralPoint sp = SpectralPoint::from_zeta(cplx(0.0, kappa));
        if (std::abs(w) > wronskian_tolerance(sp)) return;
        for (const auto& b : found)
            if (std::abs(b.kappa - kappa) < 1e-7 * (1 + kappa)) return;
        found.push_back({kappa, -kappa * kappa, w});
    };
    for (int i = 1; i < n_scan; ++i) {
        bool sign_change = (wv[i].real() * wv[i + 1].real() < 0 &&
                            std::abs(wv[i].imag()) < 1e-6 * av[i]);
        bool local_min = av[i] < av[i - 1] && av[i] < av[i + 1] && av[i] < 0.25 * (av[i - 1] + av[i + 1]);
        if (sign_change || local_min) refine(ks[std::max(0, i - 1)], ks[std::min(n_scan, i + 2)]);
    }
    std::sort(found.begin(), found.end(),
              [](const BoundState& a, const BoundState& b) { return a.kappa < b.kappa; });
    return found;
}

std::vector<cplx> complex_wronskian_zeros(const Potential& V, cplx corner_lo, cplx corner_hi,
                                          int cells, Tolerance tol) {
    double x0 = corner_lo.real(), x1 = corner_hi.real();
    double y0 = std::max(1e-9, corner_lo.imag()), y1 = corner_hi.imag();
    if (!(x0 < x1 && y0 < y1)) throw DomainError("complex_wronskian_zeros: bad rectangle");
    auto w_at = [&](cplx zeta) {
        // Newton iterates that leave the closed upper half-plane abandon the seed.
        if (zeta.imag() < 0) throw NoRoot("left the upper half-plane");
        return wronskian(V, SpectralPoint::from_zeta(zeta), tol);
    };

    Eigen::ArrayXXd mag(cells, cells);
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j < cells; ++j) {
            cplx zeta(x0 + (x1 - x0) * (i + 0.5) / cells, y0 + (y1 - y0) * (j + 0.5) / cells);
            mag(i, j) = std::abs(w_at(zeta));
        }
    std::vector<cplx> zeros;
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j < cells; ++j) {
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    int a = i + di, b = j + dj;
                    if (a < 0 || b < 0 || a >= cells || b >= cells) continue;
                    if (mag(a, b) < mag(i, j)) {
                        is_min = false;
                        break;
                    }
                }
            if (!is_min) continue;
            cplx seed(x0 + (x1 - x0) * (i + 0.5) / cells, y0 + (y1 - y0) * (j + 0.5) / cells);
            try {
                cplx root = newton_complex([&](cplx zc) { return w_at(zc); }, seed,
                                           Tolerance{tol.rel, wronskian_tolerance(
                                                                  SpectralPoint::from_zeta(seed)),
                                                     200});
                if (root.imag() <= 0) continue;
                if (root.real() < x0 - 0.5 * (x1 - x0) || root.real() > x1 + 0.5 * (x1 - x0))
                    continue;
                bool dup = false;
                for (const auto& zr : zeros)
                    if (std::abs(zr - root) < 1e-6 * (1 + std::abs(root))) dup = true;
                if (!dup) zeros.push_back(root);
            } catch (const NoRoot&) {
            }
        }
    return zeros;
}

}  // namespace thresholdscope
