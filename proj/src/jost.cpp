#include "thresholdscope/jost.hpp"

#include <algorithm>
#include <set>

#include "thresholdscope/quadrature.hpp"

namespace thresholdscope {

namespace {

const cplx I(0.0, 1.0);

/// (e^w - 1) / w, stable for small |w|.
cplx phi1(cplx w) {
    if (std::abs(w) < 0.25) {
        cplx term(1.0, 0.0), sum(1.0, 0.0);
        for (int k = 2; k <= 14; ++k) {
            term *= w / double(k);
            sum += term;
        }
        return sum;
    }
    return (std::exp(w) - 1.0) / w;
}

struct HermiteCell {
    double x0, h;
    cplx f0, d0, f1, d1;

    cplx eval(double x) const {
        double t = (x - x0) / h;
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 +
               (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
    }
    cplx eval_deriv(double x) const {
        double t = (x - x0) / h;
        double t2 = t * t;
        return ((6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * h * d0 +
                (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * h * d1) /
               h;
    }
};

/// The polynomial piece of V active on each grid cell (nullptr where V = 0).
std::vector<const PotentialSegment*> cell_segments(const Potential& V, const Grid& g) {
    std::vector<const PotentialSegment*> seg(static_cast<size_t>(g.size() - 1), nullptr);
    for (Eigen::Index j = 0; j + 1 < g.size(); ++j) {
        double mid = 0.5 * (g.nodes(j) + g.nodes(j + 1));
        for (const auto& s : V.segments())
            if (mid >= s.a && mid <= s.b && !s.is_zero()) {
                seg[static_cast<size_t>(j)] = &s;
                break;
            }
    }
    return seg;
}

/// One pass of the Volterra update: given samples (f, df) of a C^1 function F
/// on the grid, computes u(x) = integral_x^top K(x,y) V(y) F(y) dy and its
/// derivative v = u' at every node, by transporting the pair
///     u' = v,   v' = V F - 2 i zeta v
/// from the top node downward. Cells where V vanishes are advanced exactly.
void volterra_sweep(const Grid& g, const std::vector<const PotentialSegment*>& seg, cplx zeta,
                    const ArrayXcd& f, const ArrayXcd& df, double h_osc, ArrayXcd& u,
                    ArrayXcd& v) {
    const Eigen::Index N = g.size();
    u.setZero(N);
    v.setZero(N);
    const cplx lam = -2.0 * I * zeta;
    cplx uc = 0, vc = 0;
    for (Eigen::Index j = N - 2; j >= 0; --j) {
        const double x0 = g.nodes(j), x1 = g.nodes(j + 1);
        const double hcell = x1 - x0;
        const PotentialSegment* sp = seg[static_cast<size_t>(j)];
        if (sp == nullptr) {
            // v(x) = v1 e^{lam (x - x1)};  u(x) = u1 + v1 (x - x1) phi1(lam (x - x1)).
            cplx w = lam * (-hcell);
            uc = uc + vc * (-hcell) * phi1(w);
            vc = vc * std::exp(w);
        } else {
            int nsub = std::max(2, int(std::ceil(hcell / h_osc)));
            double hs = -hcell / nsub;
            HermiteCell interp{x0, hcell, f(j), df(j), f(j + 1), df(j + 1)};
            auto src = [&](double x) { return sp->eval(x) * interp.eval(x); };
            double x = x1;
            for (int m = 0; m < nsub; ++m) {
                // RK4 on (u, v).
                cplx s1 = src(x), s2 = src(x + hs / 2), s3 = s2, s4 = src(x + hs);
                cplx ku1 = vc, kv1 = s1 + lam * vc;
                cplx ku2 = vc + 0.5 * hs * kv1, kv2 = s2 + lam * (vc + 0.5 * hs * kv1);
                cplx ku3 = vc + 0.5 * hs * kv2, kv3 = s3 + lam * (vc + 0.5 * hs * kv2);
                cplx ku4 = vc + hs * kv3, kv4 = s4 + lam * (vc + hs * kv3);
                uc += hs / 6.0 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
                vc += hs / 6.0 * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
                x += hs;
            }
        }
        u(j) = uc;
        v(j) = vc;
    }
}

double factorial_tail(double q, int n) {
    // q^{n+1} / (n+1)! without overflow.
    double logv = double(n + 1) * std::log(std::max(q, 1e-300)) - std::lgamma(double(n + 2));
    return std::exp(logv);
}

}  // namespace

Grid make_jost_grid(const Potential& V, double pad, Eigen::Index n) {
    double L = V.support_radius() + pad;
    std::set<double> pts;
    for (Eigen::Index i = 0; i < n; ++i)
        pts.insert(-L + 2.0 * L * double(i) / double(n - 1));
    pts.insert(0.0);
    for (const auto& s : V.segments()) {
        for (double e : {s.a, s.b, -s.a, -s.b})
            if (e > -L && e < L) pts.insert(e);
    }
    std::vector<double> nodes;
    double last = -2 * L - 1;
    for (double p : pts) {
        if (p - last > 1e-12) nodes.push_back(p);
        last = p;
    }
    ArrayXd x = Eigen::Map<ArrayXd>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
    ArrayXd w = ArrayXd::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        double h = x(i + 1) - x(i);
        w(i) += h / 2;
        w(i + 1) += h / 2;
    }
    return Grid(std::move(x), std::move(w));
}

JostSolution jost_plus(const Potential& V, const SpectralPoint& sp, const Grid& grid,
                       Tolerance tol) {
    const double R = V.support_radius();
    if (grid.back() < R - 1e-12)
        throw DomainError("jost_plus: grid must reach the right edge of the support");

    const Eigen::Index N = grid.size();
    const cplx zeta = sp.zeta;
    const double tol_eff = std::max(tol.abs, tol.rel);
    const double M = first_moment(V, tol);
    const double q = std::sqrt(2.0) * M / jbracket(zeta);
    const double env = jbracket_minus(grid.front()) * std::exp(q);

    // Oscillation-resolving substep target for the transport integrator.
    const double lam = std::max(1.0, 2.0 * std::abs(zeta));
    const double span = grid.back() - grid.front();
    double h_osc = std::pow(120.0 * std::max(tol_eff, 1e-13) / (span * std::pow(lam, 5)), 0.25);
    h_osc = std::min(h_osc, 0.05);

    auto seg = cell_segments(V, grid);

    ArrayXcd F = ArrayXcd::Constant(N, cplx(1.0));
    ArrayXcd dF = ArrayXcd::Zero(N);
    ArrayXcd fprev = F, dfprev = dF, u, v;

    int n_terms = 0;
    double tail = env * factorial_tail(q, 0);
    const int max_terms = std::min(tol.max_iter, 400);
    for (int n = 1; n <= max_terms; ++n) {
        volterra_sweep(grid, seg, zeta, fprev, dfprev, h_osc, u, v);
        F += u;
        dF += v;
        fprev = u;
        dfprev = v;
        n_terms = n;
        tail = env * factorial_tail(q, n);
        if (tail < tol_eff) break;
        if (n == max_terms)
            throw TruncationFailure("jost_plus: series majorant did not reach tolerance");
    }

    // A-posteriori fixed-point residual of the integral equation.
    volterra_sweep(grid, seg, zeta, F, dF, h_osc, u, v);
    double resid = 0, fmax = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
        resid = std::max(resid, std::abs(F(i) - 1.0 - u(i)));
        fmax = std::max(fmax, std::abs(F(i)));
    }

    JostSolution sol;
    sol.grid = grid;
    sol.side = Side::plus;
    sol.sp = sp;
    sol.support_radius = R;
    sol.cell_has_potential.resize(seg.size());
    for (size_t j = 0; j < seg.size(); ++j) sol.cell_has_potential[j] = seg[j] != nullptr;
    sol.truncation_terms = n_terms;
    sol.certified_tail = tail;
    sol.volterra_residual = resid / (1.0 + fmax);
    sol.theta.resize(N);
    sol.dtheta.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        cplx e = std::exp(I * zeta * grid.nodes(i));
        sol.theta(i) = e * F(i);
        sol.dtheta(i) = e * (I * zeta * F(i) + dF(i));
    }
    return sol;
}

JostSolution jost_minus(const Potential& V, const SpectralPoint& sp, const Grid& grid,
                        Tolerance tol) {
    // theta_-(x; V) = theta_+(-x; V(-.)), so solve on the mirrored grid.
    const Eigen::Index N = grid.size();
    ArrayXd mnodes(N), mweights(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        mnodes(i) = -grid.nodes(N - 1 - i);
        mweights(i) = grid.weights(N - 1 - i);
    }
    Grid mirror(std::move(mnodes), std::move(mweights));
    JostSolution plus = jost_plus(V.reflect(), sp, mirror, tol);

    JostSolution sol;
    sol.grid = grid;
    sol.side = Side::minus;
    sol.sp = sp;
    sol.support_radius = V.support_radius();
    sol.truncation_terms = plus.truncation_terms;
    sol.certified_tail = plus.certified_tail;
    sol.volterra_residual = plus.volterra_residual;
    sol.theta.resize(N);
    sol.dtheta.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        sol.theta(i) = plus.theta(N - 1 - i);
        sol.dtheta(i) = -plus.dtheta(N - 1 - i);
    }
    sol.cell_has_potential.assign(plus.cell_has_potential.rbegin(),
                                  plus.cell_has_potential.rend());
    return sol;
}

namespace {

/// (value, derivative) of the exact free continuation from the data at x0.
std::pair<cplx, cplx> free_continue(cplx zeta, double x0, cplx th, cplx dth, double x) {
    if (std::abs(zeta) < 1e-12) return {th + dth * (x - x0), dth};
    cplx a = 0.5 * std::exp(-I * zeta * x0) * (th + dth / (I * zeta));
    cplx b = 0.5 * std::exp(I * zeta * x0) * (th - dth / (I * zeta));
    cplx ep = std::exp(I * zeta * x), em = std::exp(-I * zeta * x);
    return {a * ep + b * em, I * zeta * (a * ep - b * em)};
}

}  // namespace

static std::pair<cplx, cplx> jost_eval(const JostSolution& s, double x) {
    const Eigen::Index N = s.grid.size();
    const cplx zeta = s.sp.zeta;
    if (x <= s.grid.front())
        return free_continue(zeta, s.grid.front(), s.theta(0), s.dtheta(0), x);
    if (x >= s.grid.back())
        return free_continue(zeta, s.grid.back(), s.theta(N - 1), s.dtheta(N - 1), x);
    auto it = std::upper_bound(s.grid.nodes.data(), s.grid.nodes.data() + N, x);
    Eigen::Index j = std::max<Eigen::Index>(0, (it - s.grid.nodes.data()) - 1);
    j = std::min(j, N - 2);
    if (j < Eigen::Index(s.cell_has_potential.size()) && !s.cell_has_potential[size_t(j)])
        return free_continue(zeta, s.grid.nodes(j), s.theta(j), s.dtheta(j), x);
    HermiteCell c{s.grid.nodes(j), s.grid.nodes(j + 1) - s.grid.nodes(j), s.theta(j),
                  s.dtheta(j), s.theta(j + 1), s.dtheta(j + 1)};
    return {c.eval(x), c.eval_deriv(x)};
}

cplx JostSolution::value(double x) const { return jost_eval(*this, x).first; }

cplx JostSolution::derivative(double x) const { return jost_eval(*this, x).second; }

cplx wronskian(const Potential& V, const SpectralPoint& sp, Tolerance tol, Eigen::Index n) {
    const double tol_eff = std::max(tol.abs, tol.rel);
    if (n == 0) {
        double L = V.support_radius() + 1.0;
        double lam = std::max(1.0, std::abs(sp.zeta));
        double h = 0.35 * std::pow(384.0 * std::max(tol_eff, 1e-13), 0.25) / lam;
        n = std::clamp<Eigen::Index>(Eigen::Index(std::ceil(2.0 * L / h)), 1201, 160001);
    }
    Grid grid = make_jost_grid(V, 1.0, n);
    JostSolution tp = jost_plus(V, sp, grid, tol);
    JostSolution tm = jost_minus(V, sp, grid, tol);

    auto W_at = [&](double x) {
        return tp.value(x) * tm.derivative(x) - tp.derivative(x) * tm.value(x);
    };
    cplx w = W_at(0.0);
    double L = grid.back();
    double spread = std::max(std::abs(W_at(-0.37 * L) - w), std::abs(W_at(0.41 * L) - w));
    double scale = std::max(1.0, std::abs(w));
    if (spread > 100.0 * tol_eff * scale + 100.0 * (tp.certified_tail + tm.certified_tail))
        throw InconsistentWronskian("wronskian: x-dependence exceeds 100x tolerance");
    return w;
}

double wronskian_lower_bound(double M, const SpectralPoint& sp) {
    if (M < 0) throw DomainError("wronskian_lower_bound: M must be >= 0");
    double jz = jbracket(sp.zeta);
    return 2.0 * std::abs(sp.zeta) -
           2.0 * (2.0 + std::sqrt(2.0)) * M * std::exp(2.0 * std::sqrt(2.0) * M / jz);
}

BoundCheckReport verify_jost_bounds(const Potential& V, const SpectralPoint& sp,
                                    const JostSolution& sol, double slack) {
    const Eigen::Index N = sol.grid.size();
    const cplx zeta = sp.zeta;
    const double abs_zeta = std::abs(zeta);
    const double jz = jbracket(zeta);
    const double im = zeta.imag();
    const double M = first_moment(V);
    const bool plus_side = (sol.side == Side::plus);

    // Cumulative tail moment at the nodes, one cell integral at a time.
    ArrayXd Mtail(N);
    if (plus_side) {
        double acc = 0;
        Mtail(N - 1) = 0;
        auto seg = cell_segments(V, sol.grid);
        for (Eigen::Index j = N - 2; j >= 0; --j) {
            const PotentialSegment* s = seg[static_cast<size_t>(j)];
            if (s != nullptr)
                acc += integrate_real(
                    [&](double y) { return jbracket(y) * std::abs(s->eval(y)); },
                    sol.grid.nodes(j), sol.grid.nodes(j + 1), Tolerance{1e-11, 1e-13, 4000});
            Mtail(j) = acc;
        }
        Mtail(N - 1) = tail_moments(V, sol.grid.back()).first;
    } else {
        double acc = 0;
        Mtail(0) = 0;
        auto seg = cell_segments(V, sol.grid);
        for (Eigen::Index j = 0; j + 1 < N; ++j) {
            const PotentialSegment* s = seg[static_cast<size_t>(j)];
            if (s != nullptr)
                acc += integrate_real(
                    [&](double y) { return jbracket(y) * std::abs(s->eval(y)); },
                    sol.grid.nodes(j), sol.grid.nodes(j + 1), Tolerance{1e-11, 1e-13, 4000});
            Mtail(j + 1) = acc;
        }
    }

    BoundCheckReport rep;
    const double mfloor = 1e-6 * std::max(M, 1e-300);
    for (Eigen::Index i = 0; i < N; ++i) {
        double x = sol.grid.nodes(i);
        double mt = Mtail(i);
        double jb = plus_side ? jbracket_minus(x) : jbracket_plus(x);
        double decay = plus_side ? std::exp(-x * im) : std::exp(x * im);
        double envelope = jb * std::exp(std::sqrt(2.0) * mt / jz) * decay;
        double th = std::abs(sol.theta(i));
        rep.ratio_envelope = std::max(rep.ratio_envelope, th / envelope);
        if (abs_zeta > 0) {
            double env1 = std::exp(mt / abs_zeta) * decay;
            rep.ratio_envelope_flat = std::max(rep.ratio_envelope_flat, th / env1);
        }
        if (mt > mfloor) {
            cplx free = plus_side ? std::exp(I * zeta * x) : std::exp(-I * zeta * x);
            cplx dfree = plus_side ? I * zeta * free : -I * zeta * free;
            double diff_bound = std::sqrt(2.0) * jb / jz *
                                std::exp(std::sqrt(2.0) * mt / jz) * decay * mt;
            double deriv_bound = std::exp(std::sqrt(2.0) * mt / jz) * decay * mt;
            rep.ratio_difference =
                std::max(rep.ratio_difference, std::abs(sol.theta(i) - free) / diff_bound);
            rep.ratio_derivative =
                std::max(rep.ratio_derivative, std::abs(sol.dtheta(i) - dfree) / deriv_bound);
        }
    }
    if (rep.ratio_envelope > 1 + slack)
        throw BoundViolation("jost bound violated: weighted envelope");
    if (abs_zeta > 0 && rep.ratio_envelope_flat > 1 + slack)
        throw BoundViolation("jost bound violated: flat envelope (zeta != 0)");
    if (rep.ratio_difference > 1 + slack)
        throw BoundViolation("jost bound violated: difference from free exponential");
    if (rep.ratio_derivative > 1 + slack)
        throw BoundViolation("jost bound violated: derivative difference");
    return rep;
}

bool barrier_near_branch_point(double g, cplx zeta, double radius) {
    cplx s = sqrt_upper(cplx(g, 0.0));
    return std::abs(zeta - s) < radius || std::abs(zeta + s) < radius;
}

BarrierCoefficients barrier_coefficients(double g, cplx zeta) {
    if (barrier_near_branch_point(g, zeta))
        throw NearBranchPoint("barrier_coefficients: zeta within 1e-6 of a branch point");
    cplx Z = sqrt_upper(zeta * zeta - g);
    BarrierCoefficients c;
    c.zeta = zeta;
    c.Z = Z;
    c.S = std::exp(I * (zeta - Z)) * (Z + zeta) / (2.0 * Z);
    c.R = std::exp(I * (zeta + Z)) * (Z - zeta) / (2.0 * Z);
    return c;
}

std::pair<cplx, cplx> barrier_theta_plus(double g, cplx zeta, double x) {
    BarrierCoefficients c = barrier_coefficients(g, zeta);
    if (x >= 1.0) {
        cplx e = std::exp(I * zeta * x);
        return {e, I * zeta * e};
    }
    if (x >= -1.0) {
        cplx ep = std::exp(I * c.Z * x), em = std::exp(-I * c.Z * x);
        return {c.S * ep + c.R * em, I * c.Z * (c.S * ep - c.R * em)};
    }
    // Continue through the free region x < -1 from the values at x = -1.
    cplx ep = std::exp(-I * c.Z), em = std::exp(I * c.Z);
    cplx th = c.S * ep + c.R * em;
    cplx dth = I * c.Z * (c.S * ep - c.R * em);
    if (std::abs(zeta) < 1e-12) return {th + dth * (x + 1.0), dth};
    cplx a = 0.5 * std::exp(I * zeta) * (th + dth / (I * zeta));
    cplx b = 0.5 * std::exp(-I * zeta) * (th - dth / (I * zeta));
    return {a * std::exp(I * zeta * x) + b * std::exp(-I * zeta * x),
            I * zeta * (a * std::exp(I * zeta * x) - b * std::exp(-I * zeta * x))};
}

cplx barrier_wronskian_closed_form(double g, cplx zeta) {
    if (barrier_near_branch_point(g, zeta))
        throw NearBranchPoint("barrier_wronskian_closed_form: zeta near a branch point");
    cplx Z = sqrt_upper(zeta * zeta - g);
    return I / (2.0 * Z) *
           (std::exp(2.0 * I * (zeta + Z)) * (Z - zeta) * (Z - zeta) -
            std::exp(2.0 * I * (zeta - Z)) * (Z + zeta) * (Z + zeta));
}

}  // namespace thresholdscope
