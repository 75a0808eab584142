#pragma once

#include <functional>
#include <vector>

#include "thresholdscope/types.hpp"

namespace thresholdscope {

/// Sampled trajectory of a first-order complex ODE system.
struct Trajectory {
    ArrayXd t;
    std::vector<VectorXcd> y;

    const VectorXcd& back() const { return y.back(); }
};

using OdeRhs = std::function<VectorXcd(double, const VectorXcd&)>;

/// Embedded Dormand-Prince 5(4) integration of y' = rhs(t, y) over span [a, b]
/// (a > b integrates backward). Output is produced exactly at `nodes` by step
/// clipping; when `nodes` is empty, only the endpoints are reported.
inline Trajectory solve_ivp(const OdeRhs& rhs, VectorXcd y0, double a, double b,
                            Tolerance tol = {}, const ArrayXd& nodes = {}) {
    // Dormand-Prince coefficients.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = (b >= a) ? 1.0 : -1.0;
    const double span = std::abs(b - a);
    if (span == 0) {
        Trajectory tr;
        tr.t = ArrayXd::Constant(1, a);
        tr.y = {std::move(y0)};
        return tr;
    }

    std::vector<double> stops;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
        double v = nodes(i);
        if ((v - a) * dir > 1e-15 * span && (b - v) * dir > 1e-15 * span) stops.push_back(v);
    }
    std::sort(stops.begin(), stops.end(),
              [dir](double u, double v) { return u * dir < v * dir; });
    stops.push_back(b);

    Trajectory tr;
    std::vector<double> ts{a};
    tr.y.push_back(y0);

    double t = a;
    VectorXcd y = std::move(y0);
    VectorXcd k1 = rhs(t, y);
    double h = dir * std::min(span / 16.0, 0.1 * span + 1e-8);
    const double h_floor = 1e-14 * std::max(1.0, span);
    size_t next_stop = 0;
    int steps = 0;

    while (next_stop < stops.size()) {
        double target = stops[next_stop];
        bool clipped = false;
        if ((t + h - target) * dir >= 0) {
            h = target - t;
            clipped = true;
        }
        if (std::abs(h) < h_floor)
            throw StepUnderflow("solve_ivp: step size below machine-scaled floor");
        if (++steps > tol.max_iter)
            throw NonConvergence("solve_ivp: step limit exceeded");

        VectorXcd k2 = rhs(t + c2 * h, y + h * (a21 * k1));
        VectorXcd k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        VectorXcd k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        VectorXcd k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        VectorXcd k6 =
            rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        VectorXcd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        VectorXcd k7 = rhs(t + h, y5);
        VectorXcd err_v =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double sc = 0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            double w = tol.abs + tol.rel * std::max(std::abs(y(i)), std::abs(y5(i)));
            sc = std::max(sc, std::abs(err_v(i)) / w);
        }

        if (sc <= 1.0) {
            t += h;
            y.swap(y5);
            k1.swap(k7);  // FSAL
            if (clipped) {
                ts.push_back(target);
                tr.y.push_back(y);
                t = target;
                ++next_stop;
            }
        }
        double fac = (sc > 0) ? 0.9 * std::pow(sc, -0.2) : 5.0;
        fac = std::min(5.0, std::max(0.2, fac));
        h = (clipped && sc <= 1.0) ? dir * std::min(std::abs(h) * 5.0, span) : h * fac;
        if (std::abs(h) > span) h = dir * span;
        if (std::abs(h) < h_floor && next_stop < stops.size())
            throw StepUnderflow("solve_ivp: step size below machine-scaled floor");
    }

    tr.t = Eigen::Map<ArrayXd>(ts.data(), static_cast<Eigen::Index>(ts.size()));
    return tr;
}

/// Second-order scalar problem -psi'' + (q(x) - z) psi = 0 marched as a first-order
/// system for (psi, psi'); returns (psi, psi') at `b`.
inline std::pair<cplx, cplx> solve_schrodinger(const std::function<cplx(double)>& q, cplx z,
                                               cplx psi0, cplx dpsi0, double a, double b,
                                               Tolerance tol = {}) {
    OdeRhs rhs = [&](double x, const VectorXcd& y) {
        VectorXcd d(2);
        d(0) = y(1);
        d(1) = (q(x) - z) * y(0);
        return d;
    };
    VectorXcd y0(2);
    y0 << psi0, dpsi0;
    Trajectory tr = solve_ivp(rhs, std::move(y0), a, b, tol);
    return {tr.back()(0), tr.back()(1)};
}

}  // namespace thresholdscope
