#pragma once

#include <Eigen/Core>
#include <complex>

#include "thresholdscope/errors.hpp"

namespace thresholdscope {

using cplx = std::complex<double>;
using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

/// Japanese bracket <x> = sqrt(1 + x^2).
inline double jbracket(double x) { return std::sqrt(1.0 + x * x); }
inline double jbracket(cplx z) { return std::sqrt(1.0 + std::norm(z)); }

/// <x^-> : equals <x> for x < 0 and 1 for x >= 0.
inline double jbracket_minus(double x) { return x < 0 ? jbracket(x) : 1.0; }
/// <x^+> : equals <x> for x > 0 and 1 for x <= 0.
inline double jbracket_plus(double x) { return x > 0 ? jbracket(x) : 1.0; }

/// Accuracy targets for iterative algorithms.
struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-12;
    int max_iter = 100000;
};

/// Quadrature grid: strictly increasing nodes with nonnegative weights.
struct Grid {
    ArrayXd nodes;
    ArrayXd weights;

    Grid() = default;
    Grid(ArrayXd n, ArrayXd w) : nodes(std::move(n)), weights(std::move(w)) {
        validate();
    }

    Eigen::Index size() const { return nodes.size(); }
    double front() const { return nodes(0); }
    double back() const { return nodes(nodes.size() - 1); }

    void validate() const {
        if (nodes.size() != weights.size())
            throw DomainError("Grid: nodes/weights size mismatch");
        for (Eigen::Index i = 0; i + 1 < nodes.size(); ++i)
            if (!(nodes(i) < nodes(i + 1)))
                throw DomainError("Grid: nodes not strictly increasing");
        if ((weights < 0).any()) throw DomainError("Grid: negative weight");
    }
};

/// Uniform grid on [a, b] with trapezoid weights.
inline Grid uniform_grid(double a, double b, Eigen::Index n) {
    if (n < 2 || !(a < b)) throw DomainError("uniform_grid: bad arguments");
    ArrayXd x = ArrayXd::LinSpaced(n, a, b);
    double h = (b - a) / double(n - 1);
    ArrayXd w = ArrayXd::Constant(n, h);
    w(0) = w(n - 1) = h / 2;
    return Grid(std::move(x), std::move(w));
}

/// Symmetric uniform grid on [-L, L] containing the origin (odd node count).
inline Grid symmetric_grid(double L, Eigen::Index n) {
    if (n % 2 == 0) ++n;
    return uniform_grid(-L, L, n);
}

/// Radial grid on (0, L]: geometrically refined on (r_min, 1), uniform beyond.
/// Weights are plain trapezoid in r (measure factors are applied by callers).
inline Grid radial_grid(double r_min, double L, Eigen::Index n_log, Eigen::Index n_lin) {
    if (!(0 < r_min && r_min < 1.0 && 1.0 < L)) throw DomainError("radial_grid: bad arguments");
    std::vector<double> nodes;
    nodes.reserve(static_cast<size_t>(n_log + n_lin));
    for (Eigen::Index i = 0; i < n_log; ++i) {
        double t = double(i) / double(n_log);
        nodes.push_back(r_min * std::pow(1.0 / r_min, t));
    }
    for (Eigen::Index i = 0; i <= n_lin; ++i)
        nodes.push_back(1.0 + (L - 1.0) * double(i) / double(n_lin));
    ArrayXd x = Eigen::Map<ArrayXd>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
    ArrayXd w = ArrayXd::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        double h = x(i + 1) - x(i);
        w(i) += h / 2;
        w(i + 1) += h / 2;
    }
    return Grid(std::move(x), std::move(w));
}

enum class HalfPlane { boundary, interior };

/// A spectral parameter zeta in the closed upper half-plane, with z = zeta^2.
struct SpectralPoint {
    cplx zeta{};
    cplx z{};
    HalfPlane half_plane_tag = HalfPlane::boundary;

    static SpectralPoint from_zeta(cplx zeta) {
        if (zeta.imag() < -1e-14)
            throw DomainError("SpectralPoint: Im zeta must be >= 0");
        SpectralPoint sp;
        sp.zeta = zeta;
        sp.z = zeta * zeta;
        sp.half_plane_tag = zeta.imag() > 0 ? HalfPlane::interior : HalfPlane::boundary;
        return sp;
    }

    /// sqrt branch mapping C \ [0,inf) onto the open upper half-plane.
    static SpectralPoint from_z(cplx z) {
        cplx zeta = std::sqrt(z);
        if (zeta.imag() < 0) zeta = -zeta;
        SpectralPoint sp = from_zeta(zeta);
        sp.z = z;
        return sp;
    }
};

/// sqrt(zeta^2 - g) taken in the closed upper half-plane.
inline cplx sqrt_upper(cplx w) {
    cplx r = std::sqrt(w);
    if (r.imag() < 0 || (r.imag() == 0 && r.real() < 0)) r = -r;
    return r;
}

}  // namespace thresholdscope
