#include "thresholdscope/bifurcation.hpp"

#include "thresholdscope/jost.hpp"
#include "thresholdscope/linalg.hpp"
#include "thresholdscope/roots.hpp"

namespace thresholdscope {

namespace {
const cplx I(0.0, 1.0);

/// Taylor coefficients (about r = 0) of the closed-form interior potential of
/// the constructed radial family. All constituent series have radius sqrt(3),
/// so the coefficients decay geometrically and plain Horner evaluation on
/// [0, 1] is stable.
std::vector<cplx> radial3d_potential_series(cplx zeta, int degree) {
    const int n = degree + 1;
    std::vector<cplx> t(n, cplx(0));  // t = psi'/psi = i zeta r - 2r/(3 - r^2)
    if (n > 1) t[1] = I * zeta;
    for (int k = 0; 2 * k + 1 < n; ++k) t[2 * k + 1] -= 2.0 / std::pow(3.0, k + 1);

    std::vector<cplx> dt(n, cplx(0));  // t'
    for (int k = 1; k < n; ++k) dt[k - 1] = double(k) * t[k];

    std::vector<cplx> t2(n, cplx(0));  // t^2 (Cauchy product, truncated)
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) t2[i + j] += t[i] * t[j];

    std::vector<cplx> tr(n, cplx(0));  // 2 t / r (t has no constant term)
    for (int k = 1; k < n; ++k) tr[k - 1] = 2.0 * t[k];

    std::vector<cplx> v(n, cplx(0));
    v[0] = zeta * zeta;
    for (int k = 0; k < n; ++k) v[k] += dt[k] + t2[k] + tr[k];
    return v;
}

}  // namespace

cplx shallow_well_eigenvalue(double g, Tolerance tol) {
    if (!(g > 0 && g <= 0.5)) throw DomainError("shallow_well_eigenvalue: need 0 < g <= 0.5");
    const double s = std::sqrt(g);
    auto f = [&](double kappa) {
        return barrier_wronskian_closed_form(-g, cplx(0.0, kappa));
    };
    double lo = 1e-6 * g, hi = std::min(1.2 * g, 0.99 * s);
    double kappa;
    try {
        kappa = find_zero(f, lo, hi, Tolerance{tol.rel, 1e-13 * (1.0 + g), tol.max_iter});
    } catch (const NoRoot&) {
        throw NoRoot("shallow_well_eigenvalue: no Wronskian zero in (0, g]");
    }
    double E = -kappa * kappa;
    if (!(E > -g && E < 0))
        throw NoRoot("shallow_well_eigenvalue: eigenvalue outside (-g, 0)");
    return cplx(E, 0.0);
}

cplx radial3d_state(double r, cplx zeta) {
    if (!(r > 0)) throw DomainError("radial3d_state: r must be positive");
    if (r >= 1.0) return std::exp(I * zeta * r) / r;
    return 0.5 * (3.0 - r * r) * std::exp(I * zeta * 0.5 * (1.0 + r * r));
}

cplx radial3d_potential(double r, cplx zeta) {
    if (!(r > 0)) throw DomainError("radial3d_potential: r must be positive");
    if (r >= 1.0) return cplx(0);
    cplx t = I * zeta * r - 2.0 * r / (3.0 - r * r);
    cplx dt = I * zeta - (6.0 + 2.0 * r * r) / std::pow(3.0 - r * r, 2);
    return zeta * zeta + dt + t * t + 2.0 * t / r;
}

Radial3DFamily construct_3d_family(cplx zeta, const ArrayXd& r_samples) {
    if (zeta.imag() < -1e-14) throw DomainError("construct_3d_family: Im zeta must be >= 0");
    Radial3DFamily fam;
    fam.zeta = zeta;

    std::vector<cplx> coeffs = radial3d_potential_series(zeta, 44);
    fam.V_halfline = Potential({PotentialSegment{0.0, 1.0, std::move(coeffs)}}, 1.0);

    fam.r = r_samples;
    fam.psi.resize(r_samples.size());
    for (Eigen::Index i = 0; i < r_samples.size(); ++i)
        fam.psi(i) = radial3d_state(r_samples(i), zeta);

    // One-sided branch limits at the matching sphere r = 1, each from its own
    // general-r formula.
    {
        auto inner = [&](double r) {
            cplx e = std::exp(I * zeta * 0.5 * (1.0 + r * r));
            cplx v = 0.5 * (3.0 - r * r) * e;
            cplx d = e * (-r + 0.5 * (3.0 - r * r) * I * zeta * r);
            return std::pair<cplx, cplx>{v, d};
        };
        auto outer = [&](double r) {
            cplx e = std::exp(I * zeta * r);
            return std::pair<cplx, cplx>{e / r, e * (I * zeta * r - 1.0) / (r * r)};
        };
        auto [iv, id] = inner(1.0);
        auto [ov, od] = outer(1.0);
        fam.matching_jump_value = std::abs(iv - ov);
        fam.matching_jump_deriv = std::abs(id - od);
    }

    // Finite-difference residual of -psi'' - (2/r) psi' + V psi = zeta^2 psi
    // at interior samples away from the matching sphere.
    double resid = 0;
    const double h = 1e-3;
    for (int k = 0; k < 20; ++k) {
        double r = 0.06 + 0.044 * k;  // 0.06 .. 0.896, then shifted outside
        if (k >= 15) r = 1.1 + 0.2 * (k - 15);
        cplx f0 = radial3d_state(r, zeta);
        cplx fp = radial3d_state(r + h, zeta), fm = radial3d_state(r - h, zeta);
        cplx fpp = radial3d_state(r + 2 * h, zeta), fmm = radial3d_state(r - 2 * h, zeta);
        cplx d1 = (fmm - 8.0 * fm + 8.0 * fp - fpp) / (12.0 * h);
        cplx d2 = (-fmm + 16.0 * fm - 30.0 * f0 + 16.0 * fp - fpp) / (12.0 * h * h);
        cplx V = (r < 1.0) ? fam.V_halfline.eval(r) : cplx(0);
        resid = std::max(resid, std::abs(-d2 - 2.0 / r * d1 + V * f0 - zeta * zeta * f0));
    }
    fam.defining_residual = resid;
    return fam;
}

BifurcationPath track_bifurcation(const Potential& V, const Potential& W, double z0,
                                  const std::vector<double>& eps_list, Tolerance tol) {
    if (!(z0 >= 0)) throw DomainError("track_bifurcation: z0 must be >= 0");
    if (eps_list.empty()) throw DomainError("track_bifurcation: empty eps schedule");

    BifurcationPath path;
    path.z0 = z0;
    const double zeta0 = std::sqrt(z0);
    SpectralPoint sp0 = SpectralPoint::from_zeta(cplx(zeta0, 0.0));
    cplx w0 = wronskian(V, sp0, tol);
    const double tol_w0 = wronskian_tolerance(sp0);

    if (std::abs(w0) > tol_w0) {
        // Regular point: certify that no Wronskian zero enters a small disk
        // around z0 for any tested eps.
        BifurcationPath::AbsenceReport rep;
        rep.radius = 0.01;
        rep.min_abs_w = std::numeric_limits<double>::infinity();
        rep.eps_max = *std::max_element(eps_list.begin(), eps_list.end());
        const double rho = std::sqrt(rep.radius);
        for (double eps : eps_list) {
            Potential Veps = potential_axpy(cplx(1.0), V, cplx(-eps), W);
            for (int a = 0; a <= 8; ++a)
                for (int b = 1; b <= 4; ++b) {
                    double ang = pi * a / 8.0;
                    double rad = rho * b / 4.0;
                    cplx zeta = cplx(zeta0, 0.0) + rad * std::exp(I * ang);
                    if (zeta.imag() <= 0) zeta = cplx(zeta.real(), 1e-8);
                    cplx w = wronskian(Veps, SpectralPoint::from_zeta(zeta), tol);
                    rep.min_abs_w = std::min(rep.min_abs_w, std::abs(w));
                }
            path.epsilons.push_back(eps);
        }
        path.absence = rep;
        return path;
    }

    // Virtual level: track the emerging eigenvalue through the schedule.
    cplx zeta_prev(0.0, 0.0);
    bool have_prev = false;
    double eps_prev = 0;
    for (double eps : eps_list) {
        Potential Veps = potential_axpy(cplx(1.0), V, cplx(-eps), W);
        auto w_at = [&](cplx zeta) {
            if (zeta.imag() < 0) throw NoRoot("left the upper half-plane");
            return wronskian(Veps, SpectralPoint::from_zeta(zeta), tol);
        };
        cplx root;
        bool found = false;
        if (have_prev) {
            cplx seed = cplx(zeta0, 0.0) +
                        (zeta_prev - cplx(zeta0, 0.0)) * (eps / eps_prev);
            try {
                root = newton_complex(w_at, seed,
                                      Tolerance{tol.rel, wronskian_tolerance(sp0), 100});
                found = root.imag() > 0;
            } catch (const NoRoot&) {
            }
        }
        if (!found) {
            double r = std::max(3.0 * eps, 0.02);
            auto zeros = complex_wronskian_zeros(Veps, cplx(zeta0 - r, 1e-7 * (1 + r)),
                                                 cplx(zeta0 + r, r), 10, tol);
            double best = std::numeric_limits<double>::infinity();
            for (const auto& zr : zeros) {
                double d = std::abs(zr * zr - z0);
                if (d < best) {
                    best = d;
                    root = zr;
                    found = true;
                }
            }
        }
        if (!found) throw EigenvalueLost("track_bifurcation: lost the eigenvalue branch");
        zeta_prev = root;
        eps_prev = eps;
        have_prev = true;
        path.epsilons.push_back(eps);
        path.eigenvalues.push_back(root * root);
        path.wronskian_abs.push_back(std::abs(w_at(root)));
    }

    ArrayXd lx(Eigen::Index(path.epsilons.size())), ly(Eigen::Index(path.epsilons.size()));
    for (size_t i = 0; i < path.epsilons.size(); ++i) {
        lx(Eigen::Index(i)) = std::log(path.epsilons[i]);
        ly(Eigen::Index(i)) = std::log(std::abs(path.eigenvalues[i] - cplx(z0, 0.0)));
    }
    auto [slope, intercept] = lsq_fit(lx, ly);
    path.law_exponent = slope;
    path.law_prefactor = std::exp(intercept);
    return path;
}

}  // namespace thresholdscope
