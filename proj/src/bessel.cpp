#include "thresholdscope/bessel.hpp"

namespace thresholdscope {

namespace {

const cplx I(0.0, 1.0);
constexpr double series_asymptotic_boundary = 12.0;

/// Ascending series (Abramowitz & Stegun 9.1.10-9.1.13 style) for J0, Y0,
/// J1, Y1 at complex z. Valid off the cut; used for |z| <= 12.
void series_values(cplx z, cplx& j0, cplx& y0, cplx& j1, cplx& y1) {
    const cplx q = -0.25 * z * z;  // (-z^2/4)
    const cplx logterm = std::log(0.5 * z) + euler_gamma;

    // J0 = sum q^k / (k!)^2 ; Y0 = (2/pi)[logterm*J0 + sum_{k>=1} (-1)^{k+1} H_k |q|^k/(k!)^2]
    // with H_k alternating built into the recurrence below.
    cplx term(1.0, 0.0), sum_j0(1.0, 0.0), sum_y0(0.0, 0.0);
    double Hk = 0.0;
    for (int k = 1; k <= 80; ++k) {
        term *= q / double(k * k);
        Hk += 1.0 / k;
        sum_j0 += term;
        sum_y0 += -term * Hk;  // (-1)^{k+1} H_k (z^2/4)^k/(k!)^2 = -H_k q^k/(k!)^2
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum_j0))) break;
    }
    j0 = sum_j0;
    y0 = (2.0 / pi) * (logterm * sum_j0 + sum_y0);

    // J1 = (z/2) sum q^k / (k! (k+1)!)
    cplx t1(1.0, 0.0), sum_j1(1.0, 0.0), sum_y1(0.0, 0.0);
    double Hk1 = 1.0;  // H_{k+1} at k=0
    Hk = 0.0;
    // Y1 = (2/pi)[logterm*J1 - 1/z - (z/4) sum q^k (H_k + H_{k+1}) / (k!(k+1)!)]
    sum_y1 = cplx(Hk + Hk1, 0.0);
    for (int k = 1; k <= 80; ++k) {
        t1 *= q / double(k * (k + 1));
        Hk += 1.0 / k;
        Hk1 += 1.0 / (k + 1);
        sum_j1 += t1;
        sum_y1 += t1 * (Hk + Hk1);
        if (std::abs(t1) < 1e-18 * (1.0 + std::abs(sum_j1))) break;
    }
    j1 = 0.5 * z * sum_j1;
    y1 = (2.0 / pi) * (logterm * j1 - 1.0 / z - 0.25 * z * sum_y1);
}

/// Hankel asymptotic expansion (A&S 9.2): J_nu, Y_nu via the P, Q series with
/// optimal truncation; adequate to ~1e-10 for |z| >= 12.
void pq_series(int nu, cplx z, cplx& P, cplx& Q) {
    const double mu = 4.0 * nu * nu;
    const cplx z2 = 8.0 * z;
    cplx a(1.0, 0.0);
    P = cplx(1.0, 0.0);
    Q = cplx(0.0, 0.0);
    double prev = 1e300;
    for (int m = 1; m <= 24; ++m) {
        a *= (mu - double(2 * m - 1) * (2 * m - 1)) / (double(m) * z2);
        double mag = std::abs(a);
        if (mag > prev) break;  // optimal truncation of the asymptotic series
        prev = mag;
        switch (m % 4) {
            case 1: Q += a; break;
            case 2: P -= a; break;
            case 3: Q -= a; break;
            case 0: P += a; break;
        }
    }
}

void asymptotic_values(cplx z, cplx& j0, cplx& y0, cplx& j1, cplx& y1) {
    const cplx amp = std::sqrt(2.0 / (pi * z));
    {
        cplx P, Q;
        pq_series(0, z, P, Q);
        cplx chi = z - 0.25 * pi;
        j0 = amp * (P * std::cos(chi) - Q * std::sin(chi));
        y0 = amp * (P * std::sin(chi) + Q * std::cos(chi));
    }
    {
        cplx P, Q;
        pq_series(1, z, P, Q);
        cplx chi = z - 0.75 * pi;
        j1 = amp * (P * std::cos(chi) - Q * std::sin(chi));
        y1 = amp * (P * std::sin(chi) + Q * std::cos(chi));
    }
}

}  // namespace

BesselValue bessel0(cplx zarg) {
    if (zarg == cplx(0.0, 0.0))
        throw DomainError("bessel0: argument must be nonzero");
    if (zarg.imag() == 0.0 && zarg.real() < 0.0)
        throw DomainError("bessel0: argument on the branch cut (-inf, 0]");

    BesselValue v;
    v.arg = zarg;
    cplx j0, y0, j1, y1;
    if (std::abs(zarg) <= series_asymptotic_boundary) {
        v.regime = BesselRegime::series;
        series_values(zarg, j0, y0, j1, y1);
    } else {
        v.regime = BesselRegime::asymptotic;
        asymptotic_values(zarg, j0, y0, j1, y1);
    }
    v.j0 = j0;
    v.y0 = y0;
    v.h1_0 = j0 + I * y0;
    v.dj0 = -j1;
    v.dy0 = -y1;
    return v;
}

cplx hankel_wronskian_check(cplx zarg) {
    BesselValue v = bessel0(zarg);
    cplx W = v.j0 * v.dh1_0() - v.dj0 * v.h1_0;
    return W - 2.0 * I / (pi * zarg);
}

double bessel_i0(double x) {
    double q = 0.25 * x * x, term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / double(k * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double bessel_i1(double x) {
    double q = 0.25 * x * x, term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / double(k * (k + 1));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return 0.5 * x * sum;
}

}  // namespace thresholdscope
