#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thresholdscope/quadrature.hpp"
#include "thresholdscope/types.hpp"

namespace thresholdscope {

/// One polynomial piece of a potential: p(x) = sum_k coeffs[k] x^k on [a, b].
struct PotentialSegment {
    double a = 0;
    double b = 0;
    std::vector<cplx> coeffs;

    cplx eval(double x) const {
        cplx acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    bool is_zero() const {
        for (const auto& c : coeffs)
            if (c != cplx(0)) return false;
        return true;
    }
};

/// Compactly supported complex-valued potential, piecewise polynomial.
class Potential {
  public:
    Potential() = default;
    Potential(std::vector<PotentialSegment> segments, double support_radius)
        : segments_(std::move(segments)), support_radius_(support_radius) {
        std::sort(segments_.begin(), segments_.end(),
                  [](const auto& u, const auto& v) { return u.a < v.a; });
        for (const auto& s : segments_) {
            if (!(s.a < s.b)) throw DomainError("Potential: segment with a >= b");
            if (s.a < -support_radius_ - 1e-12 || s.b > support_radius_ + 1e-12)
                throw DomainError("Potential: segment outside [-R, R]");
        }
        for (size_t i = 0; i + 1 < segments_.size(); ++i)
            if (segments_[i].b > segments_[i + 1].a + 1e-12)
                throw DomainError("Potential: overlapping segments");
    }

    static Potential zero() { return Potential({}, 0.0); }

    /// Constant value c on [a, b].
    static Potential step(double a, double b, cplx c) {
        return Potential({PotentialSegment{a, b, {c}}}, std::max(std::abs(a), std::abs(b)));
    }

    /// g * indicator of [-1, 1]: the canonical barrier (g > 0) or well (g < 0).
    static Potential barrier(cplx g) { return step(-1.0, 1.0, g); }

    const std::vector<PotentialSegment>& segments() const { return segments_; }
    double support_radius() const { return support_radius_; }
    bool is_zero() const {
        for (const auto& s : segments_)
            if (!s.is_zero()) return false;
        return true;
    }

    cplx eval(double x) const {
        for (const auto& s : segments_)
            if (x >= s.a && x <= s.b) return s.eval(x);
        return cplx(0);
    }
    cplx operator()(double x) const { return eval(x); }

    /// x -> V(-x); an involution.
    Potential reflect() const {
        std::vector<PotentialSegment> segs;
        segs.reserve(segments_.size());
        for (const auto& s : segments_) {
            PotentialSegment r;
            r.a = -s.b;
            r.b = -s.a;
            r.coeffs = s.coeffs;
            for (size_t k = 1; k < r.coeffs.size(); k += 2) r.coeffs[k] = -r.coeffs[k];
            segs.push_back(std::move(r));
        }
        return Potential(std::move(segs), support_radius_);
    }

  private:
    std::vector<PotentialSegment> segments_;
    double support_radius_ = 0;
};

/// M = int <x> |V(x)| dx over the support.
inline double first_moment(const Potential& V, Tolerance tol = {}) {
    double m = 0;
    for (const auto& s : V.segments())
        m += integrate_real([&](double x) { return jbracket(x) * std::abs(s.eval(x)); }, s.a,
                            s.b, tol);
    return m;
}

/// (M_plus(x), M_minus(x)) = tails of the first moment beyond / before x.
inline std::pair<double, double> tail_moments(const Potential& V, double x, Tolerance tol = {}) {
    double plus = 0, minus = 0;
    for (const auto& s : V.segments()) {
        auto piece = [&](double lo, double hi) {
            if (!(lo < hi)) return 0.0;
            return integrate_real(
                [&](double y) { return jbracket(y) * std::abs(s.eval(y)); }, lo, hi, tol);
        };
        plus += piece(std::max(s.a, x), s.b);
        minus += piece(s.a, std::min(s.b, x));
    }
    return {plus, minus};
}

/// Total first moment with evaluators of both tails.
struct MomentData {
    double M = 0;
    Potential V;
    Tolerance tol;

    double Mplus(double x) const { return tail_moments(V, x, tol).first; }
    double Mminus(double x) const { return tail_moments(V, x, tol).second; }
};

inline MomentData moment_data(const Potential& V, Tolerance tol = {}) {
    return MomentData{first_moment(V, tol), V, tol};
}

/// a*P + b*Q as a piecewise-polynomial potential (segment endpoints are merged).
Potential potential_axpy(cplx a, const Potential& P, cplx b, const Potential& Q);

/// JSON round trip for the on-disk potential format:
/// {"segments":[{"a":..,"b":..,"coeffs":[[re,im],...]},...],"support_radius":..}
Potential potential_from_json(const std::string& text);
std::string potential_to_json(const Potential& V);
Potential load_potential(const std::string& path);

}  // namespace thresholdscope
