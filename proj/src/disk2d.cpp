#include "thresholdscope/disk2d.hpp"

#include "thresholdscope/bessel.hpp"
#include "thresholdscope/ode.hpp"

namespace thresholdscope {

namespace {
const cplx I(0.0, 1.0);
}

DiskCoefficients disk_coefficients(cplx zeta, double g) {
    if (!(g > 0.0 && g < 1.0)) throw DomainError("disk_coefficients: g must be in (0,1)");
    if (zeta.imag() < -1e-14) throw DomainError("disk_coefficients: Im zeta must be >= 0");
    cplx root_g = std::sqrt(cplx(g, 0.0));
    if (std::abs(zeta - root_g) < 1e-6 || std::abs(zeta + root_g) < 1e-6)
        throw NearBranchPoint("disk_coefficients: zeta within 1e-6 of a branch point");

    DiskCoefficients c;
    c.zeta = zeta;
    c.g = g;
    c.Z = sqrt_upper(zeta * zeta - g);

    BesselValue bz = bessel0(c.Z);
    BesselValue bzeta = bessel0(zeta);
    // Continuity of value and radial derivative at r = 1.
    c.a = 0.5 * pi * (zeta * bz.j0 * bzeta.dy0 - c.Z * bz.dj0 * bzeta.y0);
    c.b = 0.5 * pi * (c.Z * bz.dj0 * bzeta.j0 - zeta * bz.j0 * bzeta.dj0);
    c.A = 0.5 * pi * (c.Z * bzeta.h1_0 * bz.dy0 - zeta * bzeta.dh1_0() * bz.y0);
    c.B = 0.5 * pi * (zeta * bzeta.dh1_0() * bz.j0 - c.Z * bzeta.h1_0 * bz.dj0);
    return c;
}

double disk_gamma(double g) {
    if (!(g > 0.0 && g < 1.0)) throw DomainError("disk_gamma: g must be in (0,1)");
    double s = std::sqrt(g);
    return s * bessel_i1(s);
}

RadialSolutionValues radial_solutions(double r, cplx zeta, double g) {
    if (!(r > 0)) throw DomainError("radial_solutions: r must be positive");
    DiskCoefficients c = disk_coefficients(zeta, g);
    RadialSolutionValues v;
    if (r <= 1.0) {
        BesselValue b = bessel0(c.Z * r);
        v.phi = b.j0;
        v.dphi = c.Z * b.dj0;
        v.theta = c.A * b.j0 + c.B * b.y0;
        v.dtheta = c.Z * (c.A * b.dj0 + c.B * b.dy0);
    } else {
        BesselValue b = bessel0(zeta * r);
        v.phi = c.a * b.j0 + c.b * b.y0;
        v.dphi = zeta * (c.a * b.dj0 + c.b * b.dy0);
        v.theta = b.h1_0;
        v.dtheta = zeta * b.dh1_0();
    }
    return v;
}

RadialKernel2D kernel2d_radial(double g, const SpectralPoint& sp, double tol_B) {
    DiskCoefficients c = disk_coefficients(sp.zeta, g);
    if (std::abs(c.B) <= tol_B)
        throw WronskianTooSmall("kernel2d_radial: vanishing radial Wronskian");
    cplx w = c.wronskian_at_one();
    cplx zeta = sp.zeta;
    RadialKernel2D K;
    K.g = g;
    K.sp = sp;
    // The matching coefficients are fixed by sp, so each evaluation needs
    // only the Bessel values at the two radii.
    K.eval = [c, zeta, w](double r, double s) {
        double lo = std::min(r, s), hi = std::max(r, s);
        cplx phi = (lo <= 1.0) ? bessel0(c.Z * lo).j0
                               : [&] {
                                     BesselValue b = bessel0(zeta * lo);
                                     return c.a * b.j0 + c.b * b.y0;
                                 }();
        cplx theta = (hi <= 1.0) ? [&] {
            BesselValue b = bessel0(c.Z * hi);
            return c.A * b.j0 + c.B * b.y0;
        }()
                                 : bessel0(zeta * hi).h1_0;
        return phi * theta / w;
    };
    return K;
}

KernelHandle RadialKernel2D::to_handle() const {
    KernelHandle K;
    K.family = KernelFamily::disk2d_radial;
    K.measure = KernelMeasure::radial2d;
    K.sp = sp;
    K.g = g;
    double gg = g;
    K.potential = [gg](double r) { return (r > 0 && r < 1.0) ? cplx(gg) : cplx(0); };
    K.eval = eval;
    return K;
}

BLowerBoundScan b_lower_bound_scan(double g, const std::vector<cplx>& zeta_grid) {
    BLowerBoundScan out;
    out.c_emp = std::numeric_limits<double>::infinity();
    for (const cplx& zeta : zeta_grid) {
        DiskCoefficients c = disk_coefficients(zeta, g);
        double denom = std::log(2.0 + 1.0 / std::abs(zeta));
        double ratio = std::abs(c.B) / denom;
        if (ratio < out.c_emp) {
            out.c_emp = ratio;
            out.witness = zeta;
        }
        // Track A/B away from the small disk around z = g.
        cplx z = zeta * zeta;
        if (std::abs(z - g) > 0.5 * g)
            out.max_abs_a_over_b = std::max(out.max_abs_a_over_b, std::abs(c.A / c.B));
    }
    return out;
}

NonradialProfile nonradial_mode_profile(int m, double g, const ArrayXd& r_samples) {
    if (m < 0) throw DomainError("nonradial_mode_profile: m must be >= 0");
    if (!(g >= 0)) throw DomainError("nonradial_mode_profile: g must be >= 0");
    for (Eigen::Index i = 0; i < r_samples.size(); ++i)
        if (!(r_samples(i) > 0 && r_samples(i) <= 1.0))
            throw DomainError("nonradial_mode_profile: samples must lie in (0, 1]");

    // Integrate (phi, phi') inward from r = 1.
    OdeRhs rhs = [m, g](double r, const VectorXcd& y) {
        VectorXcd d(2);
        d(0) = y(1);
        d(1) = -y(1) / r + (double(m * m) / (r * r) + g) * y(0);
        return d;
    };
    ArrayXd rs = r_samples;
    std::sort(rs.data(), rs.data() + rs.size());
    VectorXcd y0(2);
    y0 << cplx(1.0), cplx(m >= 1 ? -double(m) : 0.0);
    ArrayXd stops(rs.size());
    for (Eigen::Index i = 0; i < rs.size(); ++i) stops(i) = rs(rs.size() - 1 - i);
    Trajectory tr = solve_ivp(rhs, y0, 1.0, rs(0), Tolerance{1e-11, 1e-13, 2000000}, stops);

    NonradialProfile out;
    out.r.resize(rs.size());
    out.phi.resize(rs.size());
    // Trajectory reports nodes in integration order (decreasing r).
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < tr.t.size(); ++i) {
        for (Eigen::Index k = 0; k < rs.size(); ++k)
            if (std::abs(tr.t(i) - rs(k)) < 1e-12) {
                out.r(rs.size() - 1 - n) = tr.t(i);
                out.phi(rs.size() - 1 - n) = tr.y[static_cast<size_t>(i)](0).real();
                ++n;
                break;
            }
    }
    // Monotone decrease in r (g > 0), checked on the sampled sequence.
    if (g > 0) {
        for (Eigen::Index i = 0; i + 1 < out.r.size(); ++i)
            if (!(out.phi(i) >= out.phi(i + 1) - 1e-12)) out.monotone = false;
        if (!out.monotone)
            throw MonotonicityViolation("nonradial_mode_profile: profile not decreasing");
    }
    // Fitted constant in phi(r) >= eps |ln r| over the smallest sampled radii.
    double eps = std::numeric_limits<double>::infinity();
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < out.r.size() && count < 5; ++i) {
        if (out.r(i) < 0.2) {
            eps = std::min(eps, out.phi(i) / std::abs(std::log(out.r(i))));
            ++count;
        }
    }
    out.log_growth_eps = std::isfinite(eps) ? eps : 0.0;
    return out;
}

KernelHandle make_free2d_sector(int m, const SpectralPoint& sp) {
    if (m != 0 && m != 1) throw DomainError("make_free2d_sector: m must be 0 or 1");
    cplx zeta = sp.zeta;
    if (std::abs(zeta) == 0) throw DomainError("make_free2d_sector: zeta must be nonzero");
    KernelHandle K;
    K.family = KernelFamily::disk2d_radial;
    K.measure = KernelMeasure::radial2d;
    K.sp = sp;
    K.potential = [](double) { return cplx(0); };
    K.eval = [m, zeta](double r, double s) {
        double lo = std::min(r, s), hi = std::max(r, s);
        BesselValue blo = bessel0(zeta * lo);
        BesselValue bhi = bessel0(zeta * hi);
        cplx jm = (m == 0) ? blo.j0 : -blo.dj0;  // J1 = -J0'
        cplx hm = (m == 0) ? bhi.h1_0 : -bhi.dh1_0();
        return 0.5 * I * pi * jm * hm;
    };
    return K;
}

}  // namespace thresholdscope
