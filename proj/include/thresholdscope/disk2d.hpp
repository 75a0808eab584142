#pragma once

#include <functional>

#include "thresholdscope/resolvent1d.hpp"
#include "thresholdscope/types.hpp"

namespace thresholdscope {

/// Matching coefficients of the two radial solutions of
/// (-d_r^2 - r^{-1} d_r + g 1_{(0,1)} - zeta^2) phi = 0:
///   phi_g = J0(Z r) inside, a J0(zeta r) + b Y0(zeta r) outside;
///   theta_g = A J0(Z r) + B Y0(Z r) inside, H0^(1)(zeta r) outside;
/// with Z = sqrt(zeta^2 - g) in the closed upper half-plane. The Wronskian
/// satisfies w_g(1, zeta) = -2 B(zeta) / pi.
struct DiskCoefficients {
    cplx zeta;
    double g = 0;
    cplx Z;
    cplx a, b, A, B;

    cplx wronskian_at_one() const { return -2.0 * B / pi; }
};

DiskCoefficients disk_coefficients(cplx zeta, double g);

/// Gamma(g) = i sqrt(g) J0'(i sqrt(g)) = sqrt(g) I1(sqrt(g)) > 0: the constant
/// governing the threshold limit of the radial resolvent.
double disk_gamma(double g);

struct RadialSolutionValues {
    cplx phi, theta, dphi, dtheta;
};

/// (phi_g, theta_g) and radial derivatives at r > 0.
RadialSolutionValues radial_solutions(double r, cplx zeta, double g);

/// Radial resolvent kernel phi_g(min) theta_g(max) / w_g(1, zeta), acting on
/// radial profiles against the measure s ds.
struct RadialKernel2D {
    double g = 0;
    SpectralPoint sp;
    std::function<cplx(double, double)> eval;

    KernelHandle to_handle() const;
};

RadialKernel2D kernel2d_radial(double g, const SpectralPoint& sp, double tol_B = 1e-10);

/// Scan of |B(zeta)| / ln(2 + 1/|zeta|) over a zeta grid; the empirical lower
/// constant and its witness.
struct BLowerBoundScan {
    double c_emp = 0;
    cplx witness{};
    double max_abs_a_over_b = 0;
};

BLowerBoundScan b_lower_bound_scan(double g, const std::vector<cplx>& zeta_grid);

/// Angular-mode profile phi_m on (0, 1]: solves
/// (-d_r^2 - r^{-1} d_r + m^2/r^2 + g) phi = 0 inward from phi(1) = 1,
/// phi'(1) = -m (m >= 1) or 0 (m = 0). Checks strict monotonicity and the
/// logarithmic lower bound near the origin.
struct NonradialProfile {
    ArrayXd r;
    ArrayXd phi;  // solutions are real for real data
    double log_growth_eps = 0;
    bool monotone = true;
};

NonradialProfile nonradial_mode_profile(int m, double g, const ArrayXd& r_samples);

/// m-sector radial kernel of the free 2D resolvent (i pi / 2) J_m(zeta r<) H_m^(1)(zeta r>),
/// acting against the measure s ds; currently m in {0, 1}.
KernelHandle make_free2d_sector(int m, const SpectralPoint& sp);

}  // namespace thresholdscope
