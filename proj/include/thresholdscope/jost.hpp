#pragma once

#include <memory>

#include "thresholdscope/potential.hpp"
#include "thresholdscope/types.hpp"

namespace thresholdscope {

enum class Side { plus, minus };

/// Jost solution theta(x, zeta) sampled on a grid, with a certified bound on
/// the truncated tail of the defining series. Beyond the sampled range the
/// solution is continued exactly through the free equation.
struct JostSolution {
    Grid grid;
    ArrayXcd theta;
    ArrayXcd dtheta;
    Side side = Side::plus;
    int truncation_terms = 0;
    double certified_tail = 0;
    double volterra_residual = 0;
    SpectralPoint sp;
    double support_radius = 0;
    std::vector<char> cell_has_potential;  // per grid cell; free cells continue exactly

    cplx value(double x) const;
    cplx derivative(double x) const;
};

/// Grid on [-L, L], L = support_radius + pad, symmetric about 0, with all
/// segment endpoints inserted as nodes (and their mirror images).
Grid make_jost_grid(const Potential& V, double pad = 1.0, Eigen::Index n = 1601);

/// Jost solution asymptotic to e^{+i zeta x} as x -> +inf, by the series of
/// successive Volterra approximations with factorial-majorant truncation.
JostSolution jost_plus(const Potential& V, const SpectralPoint& sp, const Grid& grid,
                       Tolerance tol = {});

/// Jost solution asymptotic to e^{-i zeta x} as x -> -inf; realized as the
/// reflection of jost_plus for the reflected potential.
JostSolution jost_minus(const Potential& V, const SpectralPoint& sp, const Grid& grid,
                        Tolerance tol = {});

/// Wronskian w(zeta) = theta_+ d_x theta_- - d_x theta_+ theta_- evaluated at
/// x = 0, with an x-independence consistency check at interior points.
cplx wronskian(const Potential& V, const SpectralPoint& sp, Tolerance tol = {},
               Eigen::Index n = 0);

/// Informative lower bound 2|zeta| - 2(2+sqrt 2) M exp(2 sqrt 2 M / <zeta>);
/// meaningful only where positive.
double wronskian_lower_bound(double M, const SpectralPoint& sp);

/// Per-estimate maxima of |measured| / |bound| for the four a-priori Jost
/// estimates. All must be <= 1 + slack for a correct solver.
struct BoundCheckReport {
    double ratio_envelope = 0;       // |theta| vs weighted envelope
    double ratio_envelope_flat = 0;  // |theta| vs e^{M_tail/|zeta|} envelope (zeta != 0)
    double ratio_difference = 0;     // |theta - free exponential| vs tail bound
    double ratio_derivative = 0;     // |theta' - free exponential'| vs tail bound
    double max_ratio() const {
        return std::max(std::max(ratio_envelope, ratio_envelope_flat),
                        std::max(ratio_difference, ratio_derivative));
    }
};

BoundCheckReport verify_jost_bounds(const Potential& V, const SpectralPoint& sp,
                                    const JostSolution& sol, double slack = 1e-6);

// --- Closed forms for the box potential g * indicator([-1,1]) ---------------

/// Matching coefficients of theta_+ on [-1, 1]: theta_+ = S e^{iZx} + R e^{-iZx}
/// with Z = sqrt(zeta^2 - g) in the closed upper half-plane.
struct BarrierCoefficients {
    cplx zeta;
    cplx Z;
    cplx S;
    cplx R;
};

bool barrier_near_branch_point(double g, cplx zeta, double radius = 1e-6);
BarrierCoefficients barrier_coefficients(double g, cplx zeta);

/// theta_+ (value, derivative) for the box potential, all x.
std::pair<cplx, cplx> barrier_theta_plus(double g, cplx zeta, double x);

/// Closed-form Wronskian of the box potential:
///     w(zeta) = (i / 2Z) [ e^{2i(zeta+Z)} (Z-zeta)^2 - e^{2i(zeta-Z)} (Z+zeta)^2 ].
cplx barrier_wronskian_closed_form(double g, cplx zeta);

}  // namespace thresholdscope
