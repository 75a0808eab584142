#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "thresholdscope/jost.hpp"

namespace thresholdscope {

enum class KernelFamily { free1d, barrier1d, generic1d, free3d, disk2d_radial };

/// Measure the kernel integrates against in its radial/line variable.
enum class KernelMeasure { line, radial2d, halfline3d };

/// Evaluable resolvent integral kernel at a fixed spectral point.
struct KernelHandle {
    KernelFamily family = KernelFamily::free1d;
    KernelMeasure measure = KernelMeasure::line;
    SpectralPoint sp;
    std::function<cplx(double, double)> eval;
    /// Kernel used for discretized norms when it differs from `eval` (the
    /// free-space family discretizes its regular half-line reduction rather
    /// than the singular pointwise kernel).
    std::function<cplx(double, double)> norm_eval;
    std::function<cplx(double)> potential;  // V(x) entering the residual check
    cplx wronskian_value{};
    double first_moment = 0;
    double g = 0;  // box/disk coupling when applicable
};

/// Scale-aware threshold below which w(zeta) counts as vanishing.
inline double wronskian_tolerance(const SpectralPoint& sp) {
    return 1e-8 * (1.0 + std::abs(sp.zeta));
}

/// Free-line kernel e^{-|x-y| sqrt(-z)} / (2 sqrt(-z)), Re sqrt(-z) > 0.
KernelHandle make_free1d(cplx z);

/// Box potential g * indicator([-1,1]) via the closed-form Jost solutions;
/// falls back to the series construction near the branch points.
KernelHandle make_barrier1d(double g, const SpectralPoint& sp, Tolerance tol = {});

/// Kernel theta_+(max) theta_-(min) / w(zeta) from the series Jost solutions.
KernelHandle make_generic1d(const Potential& V, const SpectralPoint& sp, Tolerance tol = {},
                            Eigen::Index n = 0);

/// Free-space kernel e^{-|x-y| sqrt(-z)} / (4 pi |x-y|) as a function of two
/// radial line coordinates.
KernelHandle make_free3d(cplx z);

struct ApplyResult {
    ArrayXcd u;
    double residual = 0;  // 3-point stencil defect, interior nodes
};

/// u(x) = int K(x,y) f(y) dy by grid quadrature, with a second-difference
/// residual check of (-D^2 + V - z) u = f at interior nodes.
ApplyResult apply(const KernelHandle& K, const ArrayXcd& f, const Grid& grid, double tol);

enum class LevelClass { regular, virtual_level, bound_state, excluded };

struct NormSweep;  // defined in lapnorm.hpp

/// Outcome of probing z0 on the nonnegative half-axis for a virtual level.
struct VirtualLevelReport {
    cplx z0{};
    cplx wronskian_value{};
    LevelClass classification = LevelClass::excluded;
    int rank = 0;
    std::optional<Grid> state_grid;
    std::optional<ArrayXcd> virtual_state;
    std::shared_ptr<NormSweep> evidence;  // attached for regular points
};

VirtualLevelReport detect_virtual_level(const Potential& V, double z0, Tolerance tol = {},
                                        bool with_evidence = true);

struct BoundState {
    double kappa = 0;
    double energy = 0;  // E = -kappa^2
    cplx wronskian_value{};
};

/// All zeros of kappa -> w(i kappa) in [kappa_min, kappa_max], refined until
/// |w| <= the scale-aware Wronskian tolerance.
std::vector<BoundState> bound_states(const Potential& V, double kappa_min, double kappa_max,
                                     Tolerance tol = {});

/// Zeros of w over a rectangle in the open upper half-plane (complex
/// eigenvalue search for non-selfadjoint potentials): |w| minima on a
/// subdivided cell grid polished by Newton iteration.
std::vector<cplx> complex_wronskian_zeros(const Potential& V, cplx corner_lo, cplx corner_hi,
                                          int cells = 12, Tolerance tol = {});

/// Pointwise bound envelope for the 1D kernel families:
/// 1 across the origin, 1 + min(|x|,|y|) on a common side.
inline double kernel_bound_shape(double x, double y) {
    if ((x <= 0 && y >= 0) || (y <= 0 && x >= 0)) return 1.0;
    return 1.0 + std::min(std::abs(x), std::abs(y));
}

}  // namespace thresholdscope
