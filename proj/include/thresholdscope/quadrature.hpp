#pragma once

#include <cmath>
#include <functional>

#include "thresholdscope/types.hpp"

namespace thresholdscope {

namespace detail {

struct SimpsonState {
    int splits = 0;
    int max_splits = 0;
};

template <class F>
cplx adaptive_simpson(const F& f, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole,
                      double tol, int depth, SimpsonState& st) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cplx flm = f(lm), frm = f(rm);
    cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    cplx delta = left + right - whole;
    // Richardson correction with a conservative acceptance of the estimate.
    if (std::abs(delta) <= tol || depth <= 0) {
        if (depth <= 0 && std::abs(delta) > tol) st.splits = st.max_splits + 1;
        return left + right + delta / 15.0;
    }
    if (++st.splits > st.max_splits)
        throw NonConvergence("integrate: subdivision limit exceeded");
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1, st) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1, st);
}

}  // namespace detail

/// Adaptive composite Simpson quadrature of a complex-valued integrand on [a, b].
/// The estimated error is kept below max(tol.abs, tol.rel * |result|).
template <class F>
cplx integrate(const F& f, double a, double b, Tolerance tol = {}) {
    if (!(a < b)) {
        if (a == b) return cplx(0);
        throw DomainError("integrate: requires a < b");
    }
    // First pass with a crude scale to seed the relative target.
    cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double scale = std::max(std::abs(whole), 1e-30);
    double eps = std::max(tol.abs, tol.rel * scale);
    detail::SimpsonState st;
    st.max_splits = tol.max_iter;
    cplx result = detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 60, st);
    // One refinement round if the relative target was underestimated.
    double eps2 = std::max(tol.abs, tol.rel * std::abs(result));
    if (eps2 < 0.1 * eps) {
        detail::SimpsonState st2;
        st2.max_splits = tol.max_iter;
        result = detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, eps2, 60, st2);
    }
    return result;
}

/// Real-valued convenience wrapper.
template <class F>
double integrate_real(const F& f, double a, double b, Tolerance tol = {}) {
    return integrate([&](double x) { return cplx(f(x), 0.0); }, a, b, tol).real();
}

/// Fixed-order Gauss-Legendre panel (7 points), used for smooth cell integrals.
template <class F>
cplx gauss7(const F& f, double a, double b) {
    static const double xs[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                 0.0,                 0.4058451513773972,  0.7415311855993945,
                                 0.9491079123427585};
    static const double ws[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                 0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                 0.1294849661688697};
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s = 0;
    for (int i = 0; i < 7; ++i) s += ws[i] * f(c + h * xs[i]);
    return h * s;
}

}  // namespace thresholdscope
