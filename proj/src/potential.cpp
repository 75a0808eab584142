#include "thresholdscope/potential.hpp"

#include <fstream>
#include <set>
#include <json.hpp>
#include <map>

namespace thresholdscope {

Potential potential_axpy(cplx a, const Potential& P, cplx b, const Potential& Q) {
    // Split the union of supports at every segment endpoint, then add the
    // polynomial pieces on each elementary interval.
    std::set<double> cuts;
    for (const auto& s : P.segments()) {
        cuts.insert(s.a);
        cuts.insert(s.b);
    }
    for (const auto& s : Q.segments()) {
        cuts.insert(s.a);
        cuts.insert(s.b);
    }
    std::vector<double> edges(cuts.begin(), cuts.end());
    std::vector<PotentialSegment> segs;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        if (!(lo < hi)) continue;
        double mid = 0.5 * (lo + hi);
        std::vector<cplx> coeffs;
        auto add = [&](cplx scale, const Potential& V) {
            for (const auto& s : V.segments())
                if (mid >= s.a && mid <= s.b) {
                    if (coeffs.size() < s.coeffs.size()) coeffs.resize(s.coeffs.size(), cplx(0));
                    for (size_t k = 0; k < s.coeffs.size(); ++k) coeffs[k] += scale * s.coeffs[k];
                }
        };
        add(a, P);
        add(b, Q);
        bool zero = true;
        for (const auto& c : coeffs)
            if (c != cplx(0)) zero = false;
        if (!coeffs.empty() && !zero) segs.push_back({lo, hi, std::move(coeffs)});
    }
    double R = std::max(P.support_radius(), Q.support_radius());
    for (const auto& s : segs) R = std::max({R, std::abs(s.a), std::abs(s.b)});
    return Potential(std::move(segs), R);
}

Potential potential_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<PotentialSegment> segs;
    for (const auto& js : j.at("segments")) {
        PotentialSegment s;
        s.a = js.at("a").get<double>();
        s.b = js.at("b").get<double>();
        for (const auto& c : js.at("coeffs")) {
            if (!c.is_array() || c.size() != 2)
                throw DomainError("potential json: coeffs entries must be [re, im]");
            s.coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        segs.push_back(std::move(s));
    }
    double R = j.at("support_radius").get<double>();
    return Potential(std::move(segs), R);  // ctor rejects overlaps
}

std::string potential_to_json(const Potential& V) {
    nlohmann::json j;
    j["support_radius"] = V.support_radius();
    j["segments"] = nlohmann::json::array();
    for (const auto& s : V.segments()) {
        nlohmann::json js;
        js["a"] = s.a;
        js["b"] = s.b;
        js["coeffs"] = nlohmann::json::array();
        for (const auto& c : s.coeffs) js["coeffs"].push_back({c.real(), c.imag()});
        j["segments"].push_back(std::move(js));
    }
    return j.dump(2);
}

Potential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("load_potential: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return potential_from_json(text);
}

}  // namespace thresholdscope
