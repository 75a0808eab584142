#pragma once

#include <functional>

#include "thresholdscope/types.hpp"

namespace thresholdscope {

/// Locate t with |f(t)| <= tol.abs for a complex-valued f of a real variable.
/// Works on the objective phi = |f|^2: Newton steps on phi' with a bisection
/// fallback on sign changes of phi', seeded by a coarse scan of [lo, hi].
inline double find_zero(const std::function<cplx(double)>& f, double lo, double hi,
                        Tolerance tol = {}) {
    if (!(lo < hi)) throw DomainError("find_zero: requires lo < hi");
    auto phi = [&](double t) { return std::norm(f(t)); };

    // Coarse scan for the best seed.
    const int n_scan = 64;
    double best_t = lo, best_v = phi(lo);
    for (int i = 1; i <= n_scan; ++i) {
        double t = lo + (hi - lo) * double(i) / n_scan;
        double v = phi(t);
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    }

    double span = hi - lo;
    double t = best_t;
    double a = std::max(lo, t - span / n_scan), b = std::min(hi, t + span / n_scan);
    auto dphi = [&](double x) {
        double h = 1e-6 * span;
        double xl = std::max(lo, x - h), xr = std::min(hi, x + h);
        return (phi(xr) - phi(xl)) / (xr - xl);
    };

    double da = dphi(a), db = dphi(b);
    for (int it = 0; it < tol.max_iter && it < 200; ++it) {
        if (std::abs(f(t)) <= tol.abs) return t;
        double h = 1e-6 * span;
        double tm = std::max(lo, t - h), tp = std::min(hi, t + h);
        double pm = phi(tm), p0 = phi(t), pp = phi(tp);
        double g = (pp - pm) / (tp - tm);
        double H = (pp - 2 * p0 + pm) / (h * h);
        double step = (H > 0) ? -g / H : (g > 0 ? -(b - a) / 4 : (b - a) / 4);
        double tn = t + step;
        if (!(tn > a && tn < b) || !std::isfinite(tn)) {
            // Bisection fallback on the sign change of phi'.
            if (da * db < 0) {
                double m = 0.5 * (a + b);
                double dm = dphi(m);
                if (da * dm <= 0) {
                    b = m;
                    db = dm;
                } else {
                    a = m;
                    da = dm;
                }
                tn = 0.5 * (a + b);
            } else {
                tn = 0.5 * (a + b);
            }
        }
        if (std::abs(tn - t) < 1e-16 * std::max(1.0, std::abs(t)) &&
            std::abs(f(tn)) > tol.abs) {
            t = tn;
            break;
        }
        t = tn;
    }
    if (std::abs(f(t)) <= std::max(tol.abs, 1e3 * tol.abs)) return t;
    throw NoRoot("find_zero: no root below tolerance in bracket");
}

/// Newton iteration for an analytic complex map, with derivative by central
/// complex differencing. Returns the refined zero; throws NoRoot on failure.
inline cplx newton_complex(const std::function<cplx(cplx)>& f, cplx seed, Tolerance tol = {},
                           int max_steps = 60) {
    cplx zc = seed;
    for (int it = 0; it < max_steps; ++it) {
        cplx fv = f(zc);
        if (std::abs(fv) <= tol.abs) return zc;
        double h = 1e-7 * (1.0 + std::abs(zc));
        cplx df = (f(zc + h) - f(zc - h)) / (2.0 * h);
        if (std::abs(df) == 0) break;
        cplx step = fv / df;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        zc -= step;
    }
    if (std::abs(f(zc)) <= tol.abs) return zc;
    throw NoRoot("newton_complex: did not converge");
}

}  // namespace thresholdscope
