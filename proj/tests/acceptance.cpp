// Acceptance suite: one check per shipped guarantee, each printing a single
// PASS/FAIL line. Run all with no arguments or one with --criterion N.

#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "thresholdscope/bessel.hpp"
#include "thresholdscope/bifurcation.hpp"
#include "thresholdscope/discrete.hpp"
#include "thresholdscope/disk2d.hpp"
#include "thresholdscope/jost.hpp"
#include "thresholdscope/lapnorm.hpp"
#include "thresholdscope/linalg.hpp"
#include "thresholdscope/resolvent1d.hpp"

using namespace thresholdscope;

namespace {

const cplx I(0.0, 1.0);

struct Outcome {
    bool pass = false;
    std::string detail;
};

Potential random_suite_potential(unsigned seed, double target_moment) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> edges;
    for (int i = 0; i <= 4; ++i) edges.push_back(uni(rng));
    std::sort(edges.begin(), edges.end());
    std::vector<PotentialSegment> segs;
    for (int i = 0; i < 4; ++i) {
        if (edges[i + 1] - edges[i] < 5e-3) continue;
        segs.push_back({edges[i], edges[i + 1], {cplx(uni(rng), uni(rng))}});
    }
    Potential V(std::move(segs), 1.0);
    double m = first_moment(V);
    if (m == 0) return V;
    std::vector<PotentialSegment> scaled;
    for (const auto& s : V.segments())
        scaled.push_back({s.a, s.b, {s.coeffs[0] * (target_moment / m)}});
    return Potential(std::move(scaled), 1.0);
}

std::vector<cplx> quarter_disk(int n_side, double radius) {
    std::vector<cplx> pts;
    for (int i = 0; i < n_side; ++i)
        for (int j = 0; j < n_side; ++j) {
            cplx p(radius * i / (n_side - 1), radius * j / (n_side - 1));
            if (std::abs(p) <= radius + 1e-12) pts.push_back(p);
        }
    return pts;
}

char buf[512];

// 1. Numerical Wronskian of the box potential against its closed form on a
//    7x7 quarter-disk grid, for g in {0.01, 1}, at 1e-8 relative accuracy.
Outcome criterion1() {
    double worst = 0;
    int checked = 0;
    for (double g : {0.01, 1.0}) {
        for (cplx zeta : quarter_disk(7, 3.0)) {
            if (barrier_near_branch_point(g, zeta)) continue;
            cplx w = wronskian(Potential::barrier(g), SpectralPoint::from_zeta(zeta),
                               Tolerance{1e-10, 1e-12, 2000});
            cplx ref = barrier_wronskian_closed_form(g, zeta);
            worst = std::max(worst, std::abs(w - ref) / std::max(1.0, std::abs(ref)));
            ++checked;
        }
    }
    std::snprintf(buf, sizeof(buf), "max relative deviation %.3e over %d points", worst,
                  checked);
    return {worst <= 1e-8, buf};
}

// 2. Threshold value of the box Wronskian at g = 1 against the constant
//    e^2 - e^{-2}.
Outcome criterion2() {
    cplx w = wronskian(Potential::barrier(1.0), SpectralPoint::from_zeta(cplx(0.0, 0.0)),
                       Tolerance{1e-11, 1e-12, 2000});
    double stated = std::exp(2.0) - std::exp(-2.0);  // = 2 sinh 2
    double rel = std::abs(w - stated) / stated;
    // Context for the verdict: the closed form w(zeta), evaluated at the
    // threshold, gives sqrt(g) sinh(2 sqrt g) = sinh 2, i.e. half the stated
    // constant; the computed value is checked against both.
    double closed_limit = std::sinh(2.0);
    double rel_closed = std::abs(w - closed_limit) / closed_limit;
    std::snprintf(buf, sizeof(buf),
                  "w(0) = %.12g; vs stated e^2-e^-2 = %.12g rel %.3e; vs closed-form limit "
                  "sinh(2) = %.12g rel %.3e",
                  w.real(), stated, rel, closed_limit, rel_closed);
    return {rel <= 1e-8, buf};
}

// 3. All four a-priori Jost estimates on 20 seeded potentials x 25 points.
Outcome criterion3() {
    double worst = 0;
    std::vector<cplx> pts = quarter_disk(5, 3.0);
    for (unsigned seed = 1; seed <= 20; ++seed) {
        double target = 0.1 + 0.245 * seed;  // moments spread through (0, 5]
        Potential V = random_suite_potential(seed, target);
        Grid g = make_jost_grid(V, 1.0, 1401);
        for (cplx zeta : pts) {
            SpectralPoint sp = SpectralPoint::from_zeta(zeta);
            JostSolution sol = jost_plus(V, sp, g, Tolerance{1e-10, 1e-12, 1000});
            BoundCheckReport rep = verify_jost_bounds(V, sp, sol);
            worst = std::max(worst, rep.max_ratio());
        }
    }
    std::snprintf(buf, sizeof(buf), "max bound ratio %.9f over 20x25 suite", worst);
    return {worst <= 1.0 + 1e-6, buf};
}

// 4. Wronskian magnitude dominates its lower bound wherever that is positive.
Outcome criterion4() {
    int informative = 0, violations = 0;
    double worst_margin = 1e300;
    for (unsigned seed = 1; seed <= 20; ++seed) {
        double target = 0.1 + 0.245 * seed;
        Potential V = random_suite_potential(seed, target);
        double M = first_moment(V);
        for (cplx zeta : quarter_disk(5, 3.0)) {
            SpectralPoint sp = SpectralPoint::from_zeta(zeta);
            double bound = wronskian_lower_bound(M, sp);
            if (bound <= 0) continue;
            ++informative;
            cplx w = wronskian(V, sp, Tolerance{1e-9, 1e-11, 2000});
            worst_margin = std::min(worst_margin, std::abs(w) - bound);
            if (std::abs(w) < bound * (1.0 - 1e-9)) ++violations;
        }
    }
    std::snprintf(buf, sizeof(buf), "%d informative points, %d violations, min margin %.3e",
                  informative, violations, worst_margin);
    return {informative > 0 && violations == 0, buf};
}

// 5. Shallow-well eigenvalue law.
Outcome criterion5() {
    cplx E2 = shallow_well_eigenvalue(1e-2);
    cplx E3 = shallow_well_eigenvalue(1e-3);
    bool real_ok = E2.imag() == 0.0 && E2.real() > -1e-2 && E2.real() < 0.0;
    double d2 = std::abs(E2.real() / 1e-4 + 1.0);
    double d3 = std::abs(E3.real() / 1e-6 + 1.0);
    ArrayXd lg(3), lE(3);
    int i = 0;
    for (double g : {1e-1, 1e-2, 1e-3}) {
        lg(i) = std::log(g);
        lE(i) = std::log(std::abs(shallow_well_eigenvalue(g).real()));
        ++i;
    }
    double slope = lsq_slope(lg, lE);
    std::snprintf(buf, sizeof(buf),
                  "|E/g^2+1| = %.4f (g=1e-2), %.4f (g=1e-3); log-log slope %.4f", d2, d3,
                  slope);
    return {real_ok && d2 <= 0.1 && d3 <= 0.02 && std::abs(slope - 2.0) <= 0.05, buf};
}

// 6. Limiting-absorption dichotomy on the line at s = s' = 1.1.
Outcome criterion6() {
    Grid grid = symmetric_grid(60.0, 599);
    WeightPair wp{1.1, 1.1, SpaceTag::L2s_to_L2ms};
    auto free_factory = [](const SpectralPoint& sp) { return make_free1d(sp.z); };
    NormSweep free_sw = lap_sweep(free_factory, cplx(0.0), path_negative_axis(1, 5), wp, grid);
    auto box_factory = [](const SpectralPoint& sp) { return make_barrier1d(1.0, sp); };
    NormSweep box_sw = lap_sweep(box_factory, cplx(0.0), path_negative_axis(1, 5), wp, grid);
    bool free_ok = free_sw.classification == SweepClass::diverging_power &&
                   std::abs(free_sw.fit_exponent + 0.5) <= 0.05;
    bool box_ok = box_sw.classification == SweepClass::uniformly_bounded;
    std::snprintf(buf, sizeof(buf),
                  "free line: slope %.4f (%s); box g=1: tail variation %.3f (%s)",
                  free_sw.fit_exponent, free_ok ? "diverging" : "NOT as required",
                  box_sw.tail_variation, box_ok ? "uniformly bounded" : "NOT bounded");
    return {free_ok && box_ok, buf};
}

// 7. Bessel certification: Wronskian identity and the order-zero value at 1.
Outcome criterion7() {
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        double mag = 0.05 + 49.0 * i / 49.0;
        double ang = 0.03 + 0.9 * (i % 7) / 7.0;
        cplx z = mag * std::exp(I * ang);
        if (z.imag() > 5.5) z = cplx(z.real(), 5.5);
        worst = std::max(worst, std::abs(hankel_wronskian_check(z)));
    }
    cplx j0 = bessel0(cplx(1.0, 0.0)).j0;
    double dev_j0 = std::abs(j0 - oracle::j0_series_longdouble(cplx(1.0, 0.0)));
    std::snprintf(buf, sizeof(buf), "worst Wronskian deviation %.3e; |J0(1) - oracle| %.3e",
                  worst, dev_j0);
    return {worst <= 1e-9 && dev_j0 <= 1e-12, buf};
}

// 8. Threshold regularity of the regularized planar operator, radial sector:
//    norm plateau along zeta = i 10^-k, k = 1..5, and the threshold limit of
//    theta/w against 1/Gamma at k = 5 within 1%.
Outcome criterion8() {
    double g = 0.01;
    Grid rg = radial_grid(1e-4, 40.0, 100, 200);
    WeightPair wp{1.5, 1.5, SpaceTag::L1_to_L2ms};
    std::vector<double> norms;
    for (int k = 1; k <= 5; ++k) {
        SpectralPoint sp = SpectralPoint::from_zeta(cplx(0.0, std::pow(10.0, -k)));
        norms.push_back(weighted_norm(kernel2d_radial(g, sp).to_handle(), wp, rg).value);
    }
    double lo = norms[2], hi = norms[2];
    for (size_t i = 2; i < norms.size(); ++i) {
        lo = std::min(lo, norms[i]);
        hi = std::max(hi, norms[i]);
    }
    double plateau = hi / lo - 1.0;
    bool plateau_ok = plateau <= 0.20;

    double Gamma = disk_gamma(g);
    double worst_ratio_dev = 0;
    for (double r : {1.0, 2.0, 5.0}) {
        cplx zeta(0.0, 1e-5);
        RadialSolutionValues v = radial_solutions(r, zeta, g);
        cplx ratio = v.theta / disk_coefficients(zeta, g).wronskian_at_one();
        worst_ratio_dev = std::max(worst_ratio_dev,
                                   std::abs(ratio - 1.0 / Gamma) / (1.0 / Gamma));
    }
    bool limit_ok = worst_ratio_dev <= 0.01;
    std::snprintf(
        buf, sizeof(buf),
        "norm tail variation %.3f (<= 0.20 required); theta/w at k=5 off 1/Gamma=%.2f by "
        "%.1f%% (<= 1%% required; approach is logarithmic: ratio = K0(tr)/(I0+Gamma K0(t)))",
        plateau, 1.0 / Gamma, 100.0 * worst_ratio_dev);
    return {plateau_ok && limit_ok, buf};
}

// 9. Logarithmic kernel envelope with one finite constant across the path,
//    and |B| > 1/2 on the sampled punctured disk.
Outcome criterion9() {
    double g = 0.01;
    double C_emp = 0;
    for (int k = 1; k <= 5; ++k) {
        SpectralPoint sp = SpectralPoint::from_zeta(cplx(0.0, std::pow(10.0, -k)));
        RadialKernel2D K = kernel2d_radial(g, sp);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                double r = std::pow(10.0, -2.0 + 3.5 * i / 19.0);
                double s = std::pow(10.0, -2.0 + 3.5 * j / 19.0);
                double lo = std::min(r, s), hi = std::max(r, s);
                double shape = std::log(2.0 + lo) * std::log(2.0 + 1.0 / hi);
                C_emp = std::max(C_emp, std::abs(K.eval(r, s)) / shape);
            }
    }
    bool envelope_ok = std::isfinite(C_emp) && C_emp > 0;

    double minB = 1e300;
    for (int i = 1; i <= 10; ++i)
        for (int j = 0; j < 5; ++j) {
            double t = 0.22 * i / 10.0;
            double ang = 0.05 + pi * j / 5.0;
            cplx zeta = t * std::exp(I * ang);
            if (zeta.imag() < 0) continue;
            if (std::abs(zeta - std::sqrt(g)) < 2e-2) continue;
            minB = std::min(minB, std::abs(disk_coefficients(zeta, g).B));
        }
    std::snprintf(buf, sizeof(buf), "envelope constant %.3f; min |B| %.4f on punctured disk",
                  C_emp, minB);
    return {envelope_ok && minB > 0.5, buf};
}

// 10. Angular sector profiles: monotone with a logarithmic floor.
Outcome criterion10() {
    ArrayXd rs(40);
    for (int i = 0; i < 40; ++i) rs(i) = std::pow(10.0, -3.0 + 3.0 * i / 39.0);
    double min_eps = 1e300;
    for (int m : {0, 1, 2}) {
        for (double g : {0.5, 1.0}) {
            NonradialProfile p = nonradial_mode_profile(m, g, rs);
            if (!p.monotone) {
                std::snprintf(buf, sizeof(buf), "monotonicity failed at m=%d g=%.1f", m, g);
                return {false, buf};
            }
            min_eps = std::min(min_eps, p.log_growth_eps);
        }
    }
    std::snprintf(buf, sizeof(buf), "all profiles monotone; min log-growth constant %.4f",
                  min_eps);
    return {min_eps > 0, buf};
}

// 11. Free-space kernel domination and threshold-uniform weighted norms.
Outcome criterion11() {
    double worst = 0;
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> ux(0.05, 8.0);
    std::uniform_real_distribution<double> uz(-4.0, 4.0);
    for (int k = 0; k < 1000; ++k) {
        double x = ux(rng), y = ux(rng);
        if (std::abs(x - y) < 1e-6) continue;
        cplx z(uz(rng), uz(rng));
        if (z.real() >= 0 && std::abs(z.imag()) < 1e-3) z += cplx(0.0, 0.5);
        KernelHandle K = make_free3d(z);
        worst = std::max(worst,
                         std::abs(K.eval(x, y)) * (4.0 * pi * std::abs(x - y)));
    }
    Grid rg = radial_grid(1e-3, 40.0, 60, 300);
    WeightPair wp{1.1, 1.1, SpaceTag::L2s_to_L2ms};
    auto factory = [](const SpectralPoint& sp) { return make_free3d(sp.z); };
    NormSweep sw = lap_sweep(factory, cplx(0.0), path_negative_axis(1, 8), wp, rg);
    bool bounded = sw.classification == SweepClass::uniformly_bounded;
    std::snprintf(buf, sizeof(buf),
                  "worst domination ratio %.6f; norm sweep %s (tail variation %.3f)", worst,
                  bounded ? "uniformly bounded" : "NOT bounded", sw.tail_variation);
    return {worst <= 1.0 + 1e-12 && bounded, buf};
}

// 12. Constructed radial family: matching, residual, and tail decay.
Outcome criterion12() {
    double worst_match = 0, worst_resid = 0;
    for (cplx zeta : {cplx(0.0, 0.0), cplx(0.5, 0.0), cplx(0.5, 0.1)}) {
        Radial3DFamily fam = construct_3d_family(zeta, ArrayXd::LinSpaced(10, 0.2, 3.0));
        worst_match = std::max(worst_match,
                               std::max(fam.matching_jump_value, fam.matching_jump_deriv));
        worst_resid = std::max(worst_resid, fam.defining_residual);
    }
    cplx zeta(0.5, 0.1);
    ArrayXd lr(12), lv(12);
    for (int i = 0; i < 12; ++i) {
        double r = 2.0 + i;
        lr(i) = r;
        lv(i) = std::log(std::norm(radial3d_state(r, zeta)) * r * r);
    }
    double rate = -lsq_slope(lr, lv);
    double rate_dev = std::abs(rate - 2.0 * zeta.imag()) / (2.0 * zeta.imag());
    std::snprintf(buf, sizeof(buf),
                  "worst matching jump %.2e, defining residual %.2e, tail rate %.4f "
                  "(target %.2f +- 10%%)",
                  worst_match, worst_resid, rate, 2.0 * zeta.imag());
    return {worst_match < 1e-7 && worst_resid <= 1e-8 && rate_dev <= 0.10, buf};
}

// 13. Finite-dimensional demos: min-rank vs nullity on 100 seeded matrices
//     (including the 3x3 nilpotent block), and the shift-model residual drop.
Outcome criterion13() {
    MatrixXcd J = MatrixXcd::Zero(3, 3);
    J(0, 1) = 1.0;
    J(1, 2) = 1.0;
    if (min_rank_regularizer(J) != 1) return {false, "nilpotent 3x3 block misclassified"};

    std::mt19937 seeds(20250101);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int agreements = 1;  // the block above
    for (int trial = 1; trial < 100; ++trial) {
        Eigen::Index n = 3 + (seeds() % 5);
        int nullity = int(seeds() % 4) % int(n);
        MatrixXcd A(n, n), B(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                A(i, j) = cplx(gauss(seeds), gauss(seeds));
                B(i, j) = cplx(gauss(seeds), gauss(seeds));
            }
        Eigen::HouseholderQR<MatrixXcd> qa(A), qb(B);
        VectorXd sv(n);
        for (Eigen::Index i = 0; i < n; ++i)
            sv(i) = (i < n - nullity) ? 0.5 + 2.5 * std::abs(gauss(seeds)) : 0.0;
        MatrixXcd M = MatrixXcd(qa.householderQ()) * sv.asDiagonal() *
                      MatrixXcd(qb.householderQ());
        int got = min_rank_regularizer(M, 7, seeds());
        int expect = svd_nullity(M);
        if (got == expect && expect == nullity) ++agreements;
    }

    auto phi = [](Eigen::Index i) { return 1.0 / double(i * i); };
    double r200 = engineered_virtual_state(200, cplx(1.0, 0.0), phi).residual;
    double r400 = engineered_virtual_state(400, cplx(1.0, 0.0), phi).residual;
    double drop = r200 / r400;
    std::snprintf(buf, sizeof(buf),
                  "min-rank agreement %d/100; shift residual drop %.3f (>= 1.8 required)",
                  agreements, drop);
    return {agreements == 100 && drop >= 1.8, buf};
}

using CriterionFn = Outcome (*)();
const CriterionFn criteria[13] = {criterion1, criterion2,  criterion3,  criterion4,
                                  criterion5, criterion6,  criterion7,  criterion8,
                                  criterion9, criterion10, criterion11, criterion12,
                                  criterion13};

const char* names[13] = {
    "closed-form Wronskian match (box potential, quarter disk)",
    "threshold Wronskian value at g = 1",
    "a-priori Jost estimate suite",
    "Wronskian lower bound where informative",
    "shallow-well eigenvalue law",
    "limiting-absorption dichotomy on the line",
    "Bessel certification",
    "planar threshold regularity (radial sector)",
    "planar kernel envelope and |B| floor",
    "angular sector profiles",
    "free-space domination and uniform norms",
    "constructed radial family",
    "finite-dimensional demos",
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 <= argc - 1; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);

    int failures = 0;
    for (int k = 1; k <= 13; ++k) {
        if (only != 0 && k != only) continue;
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %2d: %s - %s\n", o.pass ? "PASS" : "FAIL", k, names[k - 1],
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures;
}
