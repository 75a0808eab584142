#pragma once

#include <optional>
#include <vector>

#include "thresholdscope/potential.hpp"
#include "thresholdscope/resolvent1d.hpp"

namespace thresholdscope {

/// Eigenvalues of -d_x^2 + V - eps W tracked toward a limit point z0.
struct BifurcationPath {
    std::vector<double> epsilons;
    std::vector<cplx> eigenvalues;
    std::vector<double> wronskian_abs;
    cplx z0{};
    double law_exponent = 0;   // |E(eps) - z0| ~ prefactor * eps^exponent
    double law_prefactor = 0;

    /// Filled instead of eigenvalues when z0 is a regular point: certifies the
    /// absence of Wronskian zeros near z0 for all tested eps.
    struct AbsenceReport {
        double radius = 0;      // |z - z0| <= radius scanned
        double min_abs_w = 0;   // smallest |w| seen over the scan
        double eps_max = 0;
    };
    std::optional<AbsenceReport> absence;
};

/// The unique shallow-well bound state: zero of kappa -> w(i kappa) for
/// V = -g on [-1, 1], returned as E_g = -kappa^2 in (-g, 0).
cplx shallow_well_eigenvalue(double g, Tolerance tol = {});

/// Radial potential (supported in (0,1)) and state for the constructed family
/// with an eigenvalue at z = zeta^2; the state is e^{i zeta r}/r outside the
/// unit ball and ((3 - r^2)/2) e^{i zeta (1 + r^2)/2} inside.
struct Radial3DFamily {
    cplx zeta;
    Potential V_halfline;  // effective half-line potential for u = r psi
    ArrayXd r;
    ArrayXcd psi;
    double matching_jump_value = 0;   // |psi(1-) - psi(1+)|
    double matching_jump_deriv = 0;   // |psi'(1-) - psi'(1+)|
    double defining_residual = 0;     // finite-difference check of the radial equation
};

cplx radial3d_state(double r, cplx zeta);
cplx radial3d_potential(double r, cplx zeta);
Radial3DFamily construct_3d_family(cplx zeta, const ArrayXd& r_samples);

/// Track eigenvalue bifurcation from z0 under -eps W: for each eps, the zero
/// of the perturbed Wronskian nearest z0. When z0 is regular the returned
/// path carries an absence report instead.
BifurcationPath track_bifurcation(const Potential& V, const Potential& W, double z0,
                                  const std::vector<double>& eps_list, Tolerance tol = {});

inline std::vector<double> default_eps_schedule() { return {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}; }

}  // namespace thresholdscope
