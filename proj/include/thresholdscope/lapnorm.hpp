#pragma once

#include <functional>
#include <vector>

#include "thresholdscope/resolvent1d.hpp"

namespace thresholdscope {

enum class SpaceTag { L2s_to_L2ms, L1_to_L2ms, L2s_to_Linf };

/// Weight exponents (s, s') for the weighted-space operator norms.
struct WeightPair {
    double s = 0;
    double sprime = 0;
    SpaceTag space_tag = SpaceTag::L2s_to_L2ms;
};

/// Discretized weighted norm together with a two-resolution refinement.
struct NormEstimate {
    double value = 0;    // fine-grid estimate
    double coarse = 0;   // half-resolution estimate
    double refined = 0;  // Richardson combination
    double rel_gap = 0;  // |value - coarse| / value
};

/// Weighted operator norm of the discretized kernel on the given grid:
///   L2s_to_L2ms : top singular value of D^{1/2} W' K W D^{1/2}
///   L1_to_L2ms  : max over columns of the weighted L2 column norm
///   L2s_to_Linf : max over rows of the weighted L2 row norm
/// Radial families integrate against the measure r dr.
NormEstimate weighted_norm(const KernelHandle& K, const WeightPair& w, const Grid& grid,
                           double coarse_gap_limit = 0.10);

enum class SweepClass { uniformly_bounded, diverging_power, diverging_log };

/// Weighted norms along a path z -> z0 with a boundedness classification:
/// uniformly bounded iff the last three norms vary by < 20% and the log-log
/// slope against |z - z0| stays above -0.1.
struct NormSweep {
    std::vector<SpectralPoint> path;
    cplx z0{};
    std::vector<double> norms;
    std::vector<Eigen::Index> grid_resolutions;
    SweepClass classification = SweepClass::uniformly_bounded;
    double fit_exponent = 0;   // slope of ln norm vs ln |z - z0| over the tail
    double fit_prefactor = 0;  // exp(intercept) of the same fit
    double tail_variation = 0; // max/min - 1 over the last three norms
};

using KernelFactory = std::function<KernelHandle(const SpectralPoint&)>;

NormSweep lap_sweep(const KernelFactory& factory, cplx z0,
                    const std::vector<SpectralPoint>& path, const WeightPair& w,
                    const Grid& grid);

/// Tail differences ||K(z_j) - K(z_last)||_weighted for the approach path;
/// returns one value per non-final path point.
std::vector<double> convergence_check(const KernelFactory& factory,
                                      const std::vector<SpectralPoint>& path,
                                      const WeightPair& w, const Grid& grid);

/// sup of |K(x, y)| over the grid nodes (L1 -> Linf surrogate).
double kernel_sup(const KernelHandle& K, const Grid& grid);

/// Path builders: z = z0 - 10^{-k} (approach along the negative axis when
/// z0 = 0) and z = z0 + i 10^{-k} (approach from the upper half-plane).
std::vector<SpectralPoint> path_negative_axis(int k_min, int k_max);
std::vector<SpectralPoint> path_upper_half(cplx z0, int k_min, int k_max);
std::vector<SpectralPoint> path_imag_zeta(int k_min, int k_max);

}  // namespace thresholdscope
