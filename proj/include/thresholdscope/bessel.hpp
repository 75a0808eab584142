#pragma once

#include "thresholdscope/types.hpp"

namespace thresholdscope {

enum class BesselRegime { series, asymptotic };

/// Order-zero Bessel values at a complex argument, with first derivatives
/// J0' = -J1 and Y0' = -Y1. h1_0 = j0 + i y0 holds exactly by construction.
struct BesselValue {
    cplx j0, y0, h1_0, dj0, dy0;
    cplx arg;
    BesselRegime regime = BesselRegime::series;

    cplx dh1_0() const { return dj0 + cplx(0, 1) * dy0; }
};

/// J0, Y0, H0^(1) and derivatives for zarg off the cut (-inf, 0].
/// Ascending series up to |zarg| = 12, Hankel-type asymptotics beyond;
/// relative accuracy ~1e-10 for |zarg| <= 50 with |Im zarg| bounded.
BesselValue bessel0(cplx zarg);

/// W(J0, H0^(1))(z) - 2i/(pi z); vanishes identically for exact values.
cplx hankel_wronskian_check(cplx zarg);

/// Modified Bessel I0, I1 of a real argument by ascending series.
double bessel_i0(double x);
double bessel_i1(double x);

}  // namespace thresholdscope
