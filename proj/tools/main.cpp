// thresholdscope: batch front end for threshold-resonance computations on the
// line, the plane (radial sector), and the half-line reduction of free space.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "thresholdscope/bessel.hpp"
#include "thresholdscope/bifurcation.hpp"
#include "thresholdscope/discrete.hpp"
#include "thresholdscope/disk2d.hpp"
#include "thresholdscope/jost.hpp"
#include "thresholdscope/lapnorm.hpp"
#include "thresholdscope/resolvent1d.hpp"

using namespace thresholdscope;

namespace {

const cplx I(0.0, 1.0);

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Output {
    std::string path;  // empty: stdout
    std::ostringstream buf;

    template <class T>
    Output& operator<<(const T& v) {
        buf << v;
        return *this;
    }
    ~Output() {
        if (path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream f(path);
            f << buf.str();
        }
    }
};

int thread_cap() {
    const char* env = std::getenv("THRESHOLDSCOPE_THREADS");
    if (env != nullptr) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Deterministic parallel map: results ordered by index regardless of threads.
template <class F>
void parallel_for(Eigen::Index n, const F& body) {
    int workers = std::min<Eigen::Index>(thread_cap(), n);
    if (workers <= 1) {
        for (Eigen::Index i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<Eigen::Index> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (Eigen::Index i = next++; i < n; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

struct CommonArgs {
    std::string potential_file;
    double barrier_g = std::nan("");
    double well_g = std::nan("");
    double zeta_re = 0, zeta_im = 0;
    std::string output;
    std::string format = "csv";
    unsigned seed = 12345;
    bool selftest = false;
};

Potential resolve_potential(const CommonArgs& a) {
    int sources = int(!a.potential_file.empty()) + int(!std::isnan(a.barrier_g)) +
                  int(!std::isnan(a.well_g));
    if (sources > 1) throw CLI::ValidationError("choose one potential source");
    if (!a.potential_file.empty()) return load_potential(a.potential_file);
    if (!std::isnan(a.barrier_g)) return Potential::barrier(a.barrier_g);
    if (!std::isnan(a.well_g)) return Potential::barrier(-a.well_g);
    return Potential::zero();
}

void add_common(CLI::App* cmd, CommonArgs& a, bool with_zeta = true) {
    cmd->add_option("--potential", a.potential_file, "potential spec file (json)");
    cmd->add_option("--barrier-g", a.barrier_g, "box potential +g on [-1,1]");
    cmd->add_option("--well-g", a.well_g, "well potential -g on [-1,1]");
    if (with_zeta) {
        cmd->add_option("--zeta", a.zeta_re, "Re zeta");
        cmd->add_option("--zeta-im", a.zeta_im, "Im zeta (>= 0)");
    }
    cmd->add_option("--output,-o", a.output, "write to file instead of stdout");
    cmd->add_option("--format", a.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", a.seed, "seed for randomized subroutines");
    cmd->add_flag("--selftest", a.selftest, "run the module self checks instead");
}

int run_jost(const CommonArgs& a, const std::string& side, int n) {
    Potential V = resolve_potential(a);
    SpectralPoint sp = SpectralPoint::from_zeta(cplx(a.zeta_re, a.zeta_im));
    if (a.selftest) {
        Grid g = make_jost_grid(V, 1.0, 1201);
        JostSolution sol = jost_plus(V, sp, g, {});
        BoundCheckReport rep = verify_jost_bounds(V, sp, sol);
        Output out;
        out.path = a.output;
        out << "selftest jost: max bound ratio " << fmt(rep.max_ratio()) << " residual "
            << fmt(sol.volterra_residual) << "\n";
        return rep.max_ratio() <= 1.0 + 1e-6 ? 0 : 1;
    }
    Grid g = make_jost_grid(V, 1.0, n);
    JostSolution sol = (side == "minus") ? jost_minus(V, sp, g, {}) : jost_plus(V, sp, g, {});
    BoundCheckReport rep = verify_jost_bounds(V, sp, sol);
    Output out;
    out.path = a.output;
    if (a.format == "json") {
        out << "{\n  \"side\": \"" << side << "\",\n  \"truncation_terms\": "
            << sol.truncation_terms << ",\n  \"certified_tail\": " << fmt(sol.certified_tail)
            << ",\n  \"volterra_residual\": " << fmt(sol.volterra_residual)
            << ",\n  \"max_bound_ratio\": " << fmt(rep.max_ratio()) << ",\n  \"samples\": [\n";
        for (Eigen::Index i = 0; i < g.size(); ++i)
            out << "    [" << fmt(g.nodes(i)) << ", " << fmt(sol.theta(i).real()) << ", "
                << fmt(sol.theta(i).imag()) << ", " << fmt(sol.dtheta(i).real()) << ", "
                << fmt(sol.dtheta(i).imag()) << (i + 1 < g.size() ? "],\n" : "]\n");
        out << "  ]\n}\n";
    } else {
        out << "# truncation_terms=" << sol.truncation_terms << " certified_tail="
            << fmt(sol.certified_tail) << " volterra_residual=" << fmt(sol.volterra_residual)
            << " max_bound_ratio=" << fmt(rep.max_ratio()) << "\n";
        out << "x,re_theta,im_theta,re_dtheta,im_dtheta\n";
        for (Eigen::Index i = 0; i < g.size(); ++i)
            out << fmt(g.nodes(i)) << "," << fmt(sol.theta(i).real()) << ","
                << fmt(sol.theta(i).imag()) << "," << fmt(sol.dtheta(i).real()) << ","
                << fmt(sol.dtheta(i).imag()) << "\n";
    }
    return 0;
}

int run_wronskian(const CommonArgs& a, int grid_n, double grid_radius) {
    Potential V = resolve_potential(a);
    Output out;
    out.path = a.output;
    if (a.selftest) {
        cplx w = wronskian(Potential::zero(), SpectralPoint::from_zeta(cplx(0.7, 0.4)));
        double dev = std::abs(w - (-2.0 * I * cplx(0.7, 0.4)));
        out << "selftest wronskian: free-line deviation " << fmt(dev) << "\n";
        return dev < 1e-9 ? 0 : 1;
    }
    if (grid_n <= 1) {
        cplx w = wronskian(V, SpectralPoint::from_zeta(cplx(a.zeta_re, a.zeta_im)));
        if (a.format == "json")
            out << "{ \"re_w\": " << fmt(w.real()) << ", \"im_w\": " << fmt(w.imag())
                << ", \"abs_w\": " << fmt(std::abs(w)) << " }\n";
        else
            out << "re_zeta,im_zeta,re_w,im_w,abs_w\n"
                << fmt(a.zeta_re) << "," << fmt(a.zeta_im) << "," << fmt(w.real()) << ","
                << fmt(w.imag()) << "," << fmt(std::abs(w)) << "\n";
        return 0;
    }
    // Scan over the closed quarter disk of the given radius.
    std::vector<cplx> pts;
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j)
            pts.emplace_back(grid_radius * i / (grid_n - 1), grid_radius * j / (grid_n - 1));
    std::vector<cplx> ws(pts.size());
    parallel_for(Eigen::Index(pts.size()), [&](Eigen::Index k) {
        ws[size_t(k)] = wronskian(V, SpectralPoint::from_zeta(pts[size_t(k)]));
    });
    out << "re_zeta,im_zeta,re_w,im_w,abs_w\n";
    for (size_t k = 0; k < pts.size(); ++k)
        out << fmt(pts[k].real()) << "," << fmt(pts[k].imag()) << "," << fmt(ws[k].real())
            << "," << fmt(ws[k].imag()) << "," << fmt(std::abs(ws[k])) << "\n";
    return 0;
}

const char* level_name(LevelClass c) {
    switch (c) {
        case LevelClass::regular: return "regular";
        case LevelClass::virtual_level: return "virtual_level";
        case LevelClass::bound_state: return "bound_state";
        case LevelClass::excluded: return "excluded";
    }
    return "?";
}

int run_detect(const CommonArgs& a, double z0, bool evidence) {
    Potential V = resolve_potential(a);
    if (a.selftest) {
        VirtualLevelReport rep = detect_virtual_level(Potential::zero(), 0.0, {}, false);
        std::cout << "selftest detect: free threshold -> " << level_name(rep.classification)
                  << "\n";
        return rep.classification == LevelClass::virtual_level ? 0 : 1;
    }
    VirtualLevelReport rep = detect_virtual_level(V, z0, {}, evidence);
    Output out;
    out.path = a.output;
    out << "{\n  \"z0\": " << fmt(z0) << ",\n  \"classification\": \""
        << level_name(rep.classification) << "\",\n  \"re_w\": "
        << fmt(rep.wronskian_value.real()) << ",\n  \"im_w\": "
        << fmt(rep.wronskian_value.imag()) << ",\n  \"rank\": " << rep.rank;
    if (rep.evidence)
        out << ",\n  \"evidence_class\": "
            << (rep.evidence->classification == SweepClass::uniformly_bounded
                    ? "\"uniformly_bounded\""
                    : "\"diverging\"")
            << ",\n  \"evidence_slope\": " << fmt(rep.evidence->fit_exponent);
    if (rep.virtual_state) {
        out << ",\n  \"state\": [";
        const auto& st = *rep.virtual_state;
        const auto& sg = *rep.state_grid;
        for (Eigen::Index i = 0; i < st.size(); i += std::max<Eigen::Index>(1, st.size() / 64))
            out << "[" << fmt(sg.nodes(i)) << "," << fmt(st(i).real()) << ","
                << fmt(st(i).imag()) << "],";
        out << "[" << fmt(sg.back()) << "," << fmt(st(st.size() - 1).real()) << ","
            << fmt(st(st.size() - 1).imag()) << "]]";
    }
    out << "\n}\n";
    return 0;
}

int run_bound_states(const CommonArgs& a, double kmin, double kmax) {
    Potential V = resolve_potential(a);
    if (a.selftest) {
        auto found = bound_states(Potential::barrier(-0.01), 1e-4, 0.099);
        std::cout << "selftest bound-states: shallow well -> " << found.size() << " state(s)\n";
        return found.size() == 1 ? 0 : 1;
    }
    auto states = bound_states(V, kmin, kmax);
    Output out;
    out.path = a.output;
    out << "kappa,energy,abs_w\n";
    for (const auto& s : states)
        out << fmt(s.kappa) << "," << fmt(s.energy) << "," << fmt(std::abs(s.wronskian_value))
            << "\n";
    return 0;
}

int run_lap_sweep(const CommonArgs& a, const std::string& family, double g, double s,
                  double sprime, const std::string& space, int kmin, int kmax, double L,
                  int points, bool plot_data) {
    WeightPair wp;
    wp.s = s;
    wp.sprime = sprime;
    wp.space_tag = (space == "l1-l2") ? SpaceTag::L1_to_L2ms
                   : (space == "l2-linf") ? SpaceTag::L2s_to_Linf
                                          : SpaceTag::L2s_to_L2ms;
    KernelFactory factory;
    Grid grid = symmetric_grid(L, points);
    std::vector<SpectralPoint> path = path_negative_axis(kmin, kmax);
    if (family == "free1d") {
        factory = [](const SpectralPoint& sp) { return make_free1d(sp.z); };
    } else if (family == "barrier1d") {
        factory = [g](const SpectralPoint& sp) { return make_barrier1d(g, sp); };
    } else if (family == "free3d") {
        factory = [](const SpectralPoint& sp) { return make_free3d(sp.z); };
        grid = radial_grid(1e-3, L, 60, points);
    } else if (family == "disk2d") {
        factory = [g](const SpectralPoint& sp) { return kernel2d_radial(g, sp).to_handle(); };
        grid = radial_grid(1e-4, L, 100, points);
        path = path_imag_zeta(kmin, kmax);
    } else if (family == "generic1d") {
        Potential V = resolve_potential(a);
        factory = [V](const SpectralPoint& sp) { return make_generic1d(V, sp); };
    } else {
        throw CLI::ValidationError("unknown family: " + family);
    }
    if (a.selftest) {
        auto f = [](const SpectralPoint& sp) { return make_free1d(sp.z); };
        NormSweep sw =
            lap_sweep(f, cplx(0.0), path_negative_axis(1, 3), wp, symmetric_grid(20.0, 201));
        std::cout << "selftest lap-sweep: free-line slope " << fmt(sw.fit_exponent) << "\n";
        return (sw.fit_exponent < -0.3) ? 0 : 1;
    }
    NormSweep sw = lap_sweep(factory, cplx(0.0), path, wp, grid);
    Output out;
    out.path = a.output;
    if (plot_data) {
        for (size_t k = 0; k < sw.norms.size(); ++k)
            out << fmt(std::abs(sw.path[k].z)) << " " << fmt(sw.norms[k]) << "\n";
        return 0;
    }
    out << "re_z,im_z,norm,resolution,refined_norm\n";
    for (size_t k = 0; k < sw.norms.size(); ++k) {
        KernelHandle K = factory(sw.path[k]);
        NormEstimate est = weighted_norm(K, wp, grid);
        out << fmt(sw.path[k].z.real()) << "," << fmt(sw.path[k].z.imag()) << ","
            << fmt(sw.norms[k]) << "," << sw.grid_resolutions[k] << "," << fmt(est.refined)
            << "\n";
    }
    const char* cls = sw.classification == SweepClass::uniformly_bounded ? "uniformly_bounded"
                      : sw.classification == SweepClass::diverging_power ? "diverging_power"
                                                                         : "diverging_log";
    out << "# classification=" << cls << " slope=" << fmt(sw.fit_exponent)
        << " tail_variation=" << fmt(sw.tail_variation) << "\n";
    return 0;
}

int run_disk2d(const CommonArgs& a, double g, int scan_k) {
    if (a.selftest) {
        DiskCoefficients c = disk_coefficients(cplx(0.0, 0.01), g);
        RadialSolutionValues v = radial_solutions(1.0 - 1e-12, cplx(0.0, 0.01), g);
        cplx W = v.theta * v.dphi - v.dtheta * v.phi;
        double dev = std::abs(W - c.wronskian_at_one());
        std::cout << "selftest disk2d: wronskian identity deviation " << fmt(dev) << "\n";
        return dev < 1e-8 ? 0 : 1;
    }
    Output out;
    out.path = a.output;
    cplx zeta(a.zeta_re, a.zeta_im);
    DiskCoefficients c = disk_coefficients(zeta, g);
    out << "{\n  \"g\": " << fmt(g) << ",\n  \"gamma\": " << fmt(disk_gamma(g))
        << ",\n  \"a\": [" << fmt(c.a.real()) << ", " << fmt(c.a.imag()) << "],\n  \"b\": ["
        << fmt(c.b.real()) << ", " << fmt(c.b.imag()) << "],\n  \"A\": [" << fmt(c.A.real())
        << ", " << fmt(c.A.imag()) << "],\n  \"B\": [" << fmt(c.B.real()) << ", "
        << fmt(c.B.imag()) << "],\n  \"kernel_samples\": [\n";
    RadialKernel2D K = kernel2d_radial(g, SpectralPoint::from_zeta(zeta));
    const double rs[4] = {0.1, 0.5, 1.0, 3.0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx v = K.eval(rs[i], rs[j]);
            out << "    [" << fmt(rs[i]) << ", " << fmt(rs[j]) << ", " << fmt(v.real()) << ", "
                << fmt(v.imag()) << ((i == 3 && j == 3) ? "]\n" : "],\n");
        }
    out << "  ]";
    if (scan_k > 0) {
        out << ",\n  \"b_scan\": [\n";
        for (int k = 1; k <= scan_k; ++k) {
            DiskCoefficients ck = disk_coefficients(cplx(0.0, std::pow(10.0, -k)), g);
            out << "    [" << k << ", " << fmt(std::abs(ck.B)) << (k < scan_k ? "],\n" : "]\n");
        }
        out << "  ]";
    }
    out << "\n}\n";
    return 0;
}

int run_bifurcate(const CommonArgs& a, double z0, const std::string& base) {
    Potential V;
    if (base == "zero") V = Potential::zero();
    else if (base == "resonant-well") V = Potential::barrier(-0.25 * pi * pi);
    else V = resolve_potential(a);
    if (a.selftest) {
        cplx E = shallow_well_eigenvalue(0.01);
        double dev = std::abs(E.real() / 1e-4 + 1.0);
        std::cout << "selftest bifurcate: shallow-well law deviation " << fmt(dev) << "\n";
        return dev <= 0.1 ? 0 : 1;
    }
    BifurcationPath path =
        track_bifurcation(V, Potential::barrier(1.0), z0, default_eps_schedule());
    Output out;
    out.path = a.output;
    out << "epsilon,re_E,im_E,wronskian_abs\n";
    if (path.absence) {
        for (double eps : path.epsilons) out << fmt(eps) << ",,,\n";
        out << "# regular point: no eigenvalue within radius " << fmt(path.absence->radius)
            << " (min |w| = " << fmt(path.absence->min_abs_w) << ")\n";
    } else {
        for (size_t i = 0; i < path.epsilons.size(); ++i)
            out << fmt(path.epsilons[i]) << "," << fmt(path.eigenvalues[i].real()) << ","
                << fmt(path.eigenvalues[i].imag()) << "," << fmt(path.wronskian_abs[i]) << "\n";
        out << "# law: |E - z0| ~ " << fmt(path.law_prefactor) << " * eps^"
            << fmt(path.law_exponent) << "\n";
    }
    return 0;
}

int run_bessel_selftest(const CommonArgs& a) {
    Output out;
    out.path = a.output;
    out << "re_z,im_z,abs_wronskian_deviation\n";
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        double mag = 0.05 + 49.0 * i / 49.0;
        double ang = 0.03 + 0.9 * (i % 7) / 7.0;
        cplx z = mag * std::exp(I * ang);
        if (z.imag() > 5.5) z = cplx(z.real(), 5.5);
        double dev = std::abs(hankel_wronskian_check(z));
        worst = std::max(worst, dev);
        out << fmt(z.real()) << "," << fmt(z.imag()) << "," << fmt(dev) << "\n";
    }
    out << "# worst=" << fmt(worst) << "\n";
    return worst <= 1e-9 ? 0 : 1;
}

int run_shift_demo(const CommonArgs& a, int n) {
    auto phi = [](Eigen::Index i) { return 1.0 / double(i * i); };
    if (a.selftest) {
        MatrixXcd R = shift_resolvent(16, cplx(2.0, 0.0));
        double defect = shift_resolvent_defect(R, cplx(2.0, 0.0));
        std::cout << "selftest shift-demo: identity defect " << fmt(defect) << "\n";
        return defect < 1e-12 ? 0 : 1;
    }
    Output out;
    out.path = a.output;
    out << "n,residual,predicted_tail\n";
    for (Eigen::Index m : {Eigen::Index(n), Eigen::Index(2 * n)}) {
        ShiftModel model = engineered_virtual_state(m, cplx(1.0, 0.0), phi);
        out << m << "," << fmt(model.residual) << "," << fmt(model.predicted_tail) << "\n";
    }
    return 0;
}

int run_rank_demo(const CommonArgs& a, const std::string& matrix, int n) {
    if (a.selftest) {
        MatrixXcd Z = MatrixXcd::Zero(4, 4);
        int r = min_rank_regularizer(Z, 7, a.seed);
        std::cout << "selftest rank-demo: zero 4x4 -> " << r << "\n";
        return r == 4 ? 0 : 1;
    }
    MatrixXcd M;
    if (matrix == "jordan3") {
        M = MatrixXcd::Zero(3, 3);
        M(0, 1) = 1.0;
        M(1, 2) = 1.0;
    } else if (matrix == "zero") {
        M = MatrixXcd::Zero(n, n);
    } else if (matrix == "random") {
        std::mt19937 rng(a.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        M.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) M(i, j) = cplx(gauss(rng), gauss(rng));
    } else {
        throw CLI::ValidationError("unknown matrix: " + matrix);
    }
    int r = min_rank_regularizer(M, 7, a.seed);
    Output out;
    out.path = a.output;
    out << r << "\n";
    return (matrix == "jordan3" && r != 1) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thresholdscope: virtual levels of 1D/radial Schrodinger operators"};
    app.require_subcommand(1);

    CommonArgs a;
    std::string side = "plus";
    int jost_n = 801;
    auto* jost_cmd = app.add_subcommand("jost", "Jost solutions with bound certification");
    add_common(jost_cmd, a);
    jost_cmd->add_option("--side", side, "plus | minus");
    jost_cmd->add_option("--grid-n", jost_n, "sample count");

    int scan_n = 0;
    double scan_radius = 3.0;
    auto* wr_cmd = app.add_subcommand("wronskian", "Wronskian at a point or over a zeta grid");
    add_common(wr_cmd, a);
    wr_cmd->add_option("--grid", scan_n, "scan an n x n quarter-disk grid");
    wr_cmd->add_option("--radius", scan_radius, "scan radius");

    double z0 = 0.0;
    bool evidence = false;
    auto* det_cmd = app.add_subcommand("detect", "virtual-level detection at z0 >= 0");
    add_common(det_cmd, a, false);
    det_cmd->add_option("--z0", z0, "spectral point on [0, inf)");
    det_cmd->add_flag("--evidence", evidence, "attach a norm-sweep evidence record");

    double kmin = 1e-3, kmax = 2.0;
    auto* bs_cmd = app.add_subcommand("bound-states", "zeros of w(i kappa)");
    add_common(bs_cmd, a, false);
    bs_cmd->add_option("--kappa-min", kmin);
    bs_cmd->add_option("--kappa-max", kmax);

    std::string family = "free1d", space = "l2-l2";
    double g = 0.01, s_w = 1.1, sp_w = 1.1, L = 60.0;
    int kpath_min = 1, kpath_max = 5, points = 599;
    auto* lap_cmd = app.add_subcommand("lap-sweep", "weighted norms along z -> z0");
    add_common(lap_cmd, a, false);
    lap_cmd->add_option("--family", family, "free1d|barrier1d|generic1d|free3d|disk2d");
    lap_cmd->add_option("--g", g, "coupling for barrier1d/disk2d");
    lap_cmd->add_option("--s", s_w, "source weight exponent");
    lap_cmd->add_option("--sprime", sp_w, "target weight exponent");
    lap_cmd->add_option("--space", space, "l2-l2 | l1-l2 | l2-linf");
    lap_cmd->add_option("--k-min", kpath_min);
    lap_cmd->add_option("--k-max", kpath_max);
    lap_cmd->add_option("--L", L, "domain half-width / radial cutoff");
    lap_cmd->add_option("--points", points, "grid points");
    bool plot_data = false;
    lap_cmd->add_flag("--plot-data", plot_data, "emit plain two-column |z| / norm data");

    double disk_g = 0.01;
    int scan_k = 0;
    auto* disk_cmd = app.add_subcommand("disk2d", "radial coefficients and kernel of the disk");
    add_common(disk_cmd, a);
    disk_cmd->add_option("--g", disk_g, "disk coupling in (0,1)");
    disk_cmd->add_option("--b-scan-k", scan_k, "also scan |B| along zeta = i 10^-k");

    double bif_z0 = 0.0;
    std::string base = "custom";
    auto* bif_cmd = app.add_subcommand("bifurcate", "eigenvalue family from a threshold");
    add_common(bif_cmd, a, false);
    bif_cmd->add_option("--z0", bif_z0);
    bif_cmd->add_option("--base", base, "zero | resonant-well | custom");

    auto* bes_cmd = app.add_subcommand("bessel-selftest", "Wronskian deviation table");
    add_common(bes_cmd, a, false);

    int shift_n = 200;
    auto* shift_cmd = app.add_subcommand("shift-demo", "engineered virtual state residuals");
    add_common(shift_cmd, a, false);
    shift_cmd->add_option("--n", shift_n, "truncation size");

    std::string matrix = "jordan3";
    int rank_n = 4;
    auto* rank_cmd = app.add_subcommand("rank-demo", "min-rank regularization of a matrix");
    add_common(rank_cmd, a, false);
    rank_cmd->add_option("--matrix", matrix, "jordan3 | zero | random");
    rank_cmd->add_option("--n", rank_n, "matrix size for zero/random");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (jost_cmd->parsed()) return run_jost(a, side, jost_n);
        if (wr_cmd->parsed()) return run_wronskian(a, scan_n, scan_radius);
        if (det_cmd->parsed()) return run_detect(a, z0, evidence);
        if (bs_cmd->parsed()) return run_bound_states(a, kmin, kmax);
        if (lap_cmd->parsed())
            return run_lap_sweep(a, family, g, s_w, sp_w, space, kpath_min, kpath_max, L,
                                 points, plot_data);
        if (disk_cmd->parsed()) return run_disk2d(a, disk_g, scan_k);
        if (bif_cmd->parsed()) return run_bifurcate(a, bif_z0, base);
        if (bes_cmd->parsed()) return run_bessel_selftest(a);
        if (shift_cmd->parsed()) return run_shift_demo(a, shift_n);
        if (rank_cmd->parsed()) return run_rank_demo(a, matrix, rank_n);
    } catch (const NumericsError& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
