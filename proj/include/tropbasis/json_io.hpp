#pragma once

// JSON mirrors of the text outputs. Rationals are encoded as strings ("3/2"),
// indices keep the convention of the matching text format.

#include "tropbasis/fan.hpp"
#include "tropbasis/formats.hpp"
#include "tropbasis/hyperarrange.hpp"
#include "tropbasis/lifts.hpp"
#include "tropbasis/trop_core.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tropbasis {

using Json = nlohmann::ordered_json;

inline Json to_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

inline Json to_json(const std::vector<Vector>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) a.push_back(to_json(r));
    return a;
}

inline Json to_json(const TropicalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
        rows.push_back(r);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline Json one_based(const std::vector<std::size_t>& idx) {
    Json a = Json::array();
    for (auto i : idx) a.push_back(i + 1);
    return a;
}

inline Json to_json(const Fan& fan) {
    FanListing l = list_fan(fan);
    Json cones = Json::array();
    for (const auto& c : l.cones)
        cones.push_back({{"dim", c.dim},
                         {"maximal", c.maximal},
                         {"equalities", c.eqs},
                         {"inequalities", c.ineqs},
                         {"rays", c.rays}});
    return {{"ambient_dim", fan.ambient_dim()},
            {"lineality_dim", fan.lineality_dim()},
            {"lineality", to_json(l.lineality)},
            {"rays", to_json(l.rays)},
            {"constraints", to_json(l.constraints)},
            {"cones", cones},
            {"f_vector", fan.f_vector().counts}};
}

inline Json to_json(const Certificate& cert, const TropicalMatrix& a) {
    Json hs = Json::array();
    for (const auto& h : cert.hyperplanes) hs.push_back(to_json(h.coeffs));
    Json types = Json::array();
    for (const auto& t : cert.types) types.push_back({one_based(t[0]), one_based(t[1])});
    auto problems = cert.verify(a);
    return {{"hyperplanes", hs},
            {"stable_pair", {cert.stable_pair.first + 1, cert.stable_pair.second + 1}},
            {"types", types},
            {"self_verification", problems.empty() ? "PASS" : "FAIL"},
            {"problems", problems}};
}

inline Json to_json(const LiftMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.push_back({{"numerator", format_laurent(m(i, j).numerator())},
                         {"denominator", format_laurent(m(i, j).denominator())}});
        rows.push_back(r);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

}  // namespace tropbasis
