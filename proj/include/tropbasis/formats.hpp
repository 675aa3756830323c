#pragma once

// Text formats for fans and rank-3 certificates.
//
// Fan file:
//
//   AMBIENT_DIM n
//   LINEALITY_DIM l
//   LINEALITY l            followed by l basis vectors
//   RAYS r                 followed by r primitive vectors orthogonal to the lineality space
//   CONSTRAINTS c          followed by c normal vectors
//   CONES k                followed by k lines "dim max|face eq i.. ineq j.. rays r.."
//   F_VECTOR c_0 c_1 ...
//
// A cone line lists the 0-based indices of its equality and inequality normals
// {x : <a, x> = 0 or >= 0} and of the rays it contains.
//
// Certificate file:
//
//   CERTIFICATE 5 n
//   HYPERPLANE k h_1 .. h_5     for k = 1..5
//   STABLE_PAIR i j
//   TYPES                       followed by n lines "column type_i type_j", types as "1,3"
//   SELF_VERIFICATION PASS|FAIL

#include "tropbasis/cone.hpp"
#include "tropbasis/errors.hpp"
#include "tropbasis/fan.hpp"
#include "tropbasis/hyperarrange.hpp"
#include "tropbasis/linalg.hpp"
#include "tropbasis/rational.hpp"
#include "tropbasis/text_io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tropbasis {

/// Component of a vector orthogonal to span(basis), scaled to a primitive integer vector.
inline Vector project_off(const Vector& v, const std::vector<Vector>& basis) {
    if (basis.empty()) return primitive(v);
    const std::size_t k = basis.size();
    std::vector<Vector> gram(k, Vector(k));
    Vector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = dot(basis[i], v);
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    }
    auto inv = inverse(gram);
    Vector out = v;
    for (std::size_t i = 0; i < k; ++i) {
        Rational c = dot(inv[i], rhs);
        out = out - c * basis[i];
    }
    return primitive(out);
}

struct FanListing {
    std::vector<Vector> lineality;
    std::vector<Vector> rays;
    std::vector<Vector> constraints;
    struct Entry {
        std::size_t dim = 0;
        bool maximal = false;
        std::vector<std::size_t> eqs, ineqs, rays;
    };
    std::vector<Entry> cones;
};

/// Indexed description of a fan shared by the text and JSON writers.
inline FanListing list_fan(const Fan& fan) {
    FanListing out;
    const auto& cones = fan.cones();
    out.lineality = rref(cones.front().lineality_basis(), fan.ambient_dim()).rows;
    for (const auto& c : cones)
        if (c.dim() == fan.lineality_dim() + 1) out.rays.push_back(project_off(c.relative_interior_point(), out.lineality));
    std::map<Vector, std::size_t, decltype(&lex_less)> index(&lex_less);
    auto id = [&](const Vector& a) {
        auto [it, fresh] = index.emplace(a, out.constraints.size());
        if (fresh) out.constraints.push_back(a);
        return it->second;
    };
    for (std::size_t i = 0; i < cones.size(); ++i) {
        FanListing::Entry e;
        e.dim = cones[i].dim();
        e.maximal = fan.is_maximal(i);
        for (const auto& a : cones[i].equalities()) e.eqs.push_back(id(a));
        for (const auto& a : cones[i].inequalities()) e.ineqs.push_back(id(a));
        for (std::size_t r = 0; r < out.rays.size(); ++r)
            if (cones[i].contains(out.rays[r])) e.rays.push_back(r);
        out.cones.push_back(std::move(e));
    }
    return out;
}

inline void write_fan(std::ostream& out, const Fan& fan) {
    FanListing l = list_fan(fan);
    auto vec = [&](const Vector& v) {
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i].get_str();
        out << '\n';
    };
    out << "AMBIENT_DIM " << fan.ambient_dim() << '\n';
    out << "LINEALITY_DIM " << fan.lineality_dim() << '\n';
    out << "LINEALITY " << l.lineality.size() << '\n';
    for (const auto& v : l.lineality) vec(v);
    out << "RAYS " << l.rays.size() << '\n';
    for (const auto& v : l.rays) vec(v);
    out << "CONSTRAINTS " << l.constraints.size() << '\n';
    for (const auto& v : l.constraints) vec(v);
    out << "CONES " << l.cones.size() << '\n';
    for (const auto& c : l.cones) {
        out << c.dim << (c.maximal ? " max" : " face") << " eq";
        for (auto i : c.eqs) out << ' ' << i;
        out << " ineq";
        for (auto i : c.ineqs) out << ' ' << i;
        out << " rays";
        for (auto i : c.rays) out << ' ' << i;
        out << '\n';
    }
    out << "F_VECTOR";
    for (auto c : fan.f_vector().counts) out << ' ' << c;
    out << '\n';
}

inline std::string format_fan(const Fan& fan) {
    std::ostringstream o;
    write_fan(o, fan);
    return o.str();
}

namespace detail {

inline std::size_t section(TokenReader& r, const std::string& name, std::size_t max = 1u << 24) {
    const auto& l = r.next_line(2, name.c_str());
    expect_keyword(l[0], name);
    return static_cast<std::size_t>(token_integer(l[1], 0, static_cast<long long>(max)));
}

inline std::vector<Vector> vectors(TokenReader& r, std::size_t count, std::size_t n, const char* what) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& l = r.next_line(n, what);
        Vector v;
        for (const auto& t : l) v.push_back(token_rational(t));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace detail

inline Fan read_fan(std::istream& in) {
    TokenReader r(in);
    const std::size_t n = detail::section(r, "AMBIENT_DIM", 1u << 12);
    const std::size_t lin = detail::section(r, "LINEALITY_DIM", n);
    detail::vectors(r, detail::section(r, "LINEALITY", n), n, "lineality vector");
    auto rays = detail::vectors(r, detail::section(r, "RAYS"), n, "ray");
    auto cons = detail::vectors(r, detail::section(r, "CONSTRAINTS"), n, "constraint");
    const std::size_t k = detail::section(r, "CONES");
    if (k == 0) throw ParseError("a fan needs at least one cone", r.last_line(), 1);
    std::vector<Cone> cones;
    std::vector<bool> maximal;
    for (std::size_t c = 0; c < k; ++c) {
        const auto& l = r.next_line();
        if (l.size() < 5) throw ParseError("cone line too short", l.front().line, l.front().column);
        auto dim = static_cast<std::size_t>(token_integer(l[0], 0, static_cast<long long>(n)));
        if (l[1].text != "max" && l[1].text != "face")
            throw ParseError("expected 'max' or 'face'", l[1].line, l[1].column);
        expect_keyword(l[2], "eq");
        std::vector<Vector> eqs, ineqs;
        std::size_t p = 3;
        for (; p < l.size() && l[p].text != "ineq"; ++p)
            eqs.push_back(cons[static_cast<std::size_t>(token_integer(l[p], 0, static_cast<long long>(cons.size()) - 1))]);
        if (p == l.size()) throw ParseError("missing 'ineq'", l.back().line, l.back().column);
        for (++p; p < l.size() && l[p].text != "rays"; ++p)
            ineqs.push_back(cons[static_cast<std::size_t>(token_integer(l[p], 0, static_cast<long long>(cons.size()) - 1))]);
        if (p == l.size()) throw ParseError("missing 'rays'", l.back().line, l.back().column);
        for (++p; p < l.size(); ++p) token_integer(l[p], 0, static_cast<long long>(rays.size()) - 1);
        Cone cone(n, std::move(eqs), std::move(ineqs));
        if (cone.dim() != dim)
            throw ParseError("cone dimension " + std::to_string(dim) + " does not match its constraints (" +
                                 std::to_string(cone.dim()) + ")",
                             l[0].line, l[0].column);
        cones.push_back(std::move(cone));
        maximal.push_back(l[1].text == "max");
    }
    const auto& fv = r.next_line();
    expect_keyword(fv.front(), "F_VECTOR");
    r.expect_end();
    Fan fan(n, std::move(cones), std::move(maximal));
    if (fan.lineality_dim() != lin)
        throw ParseError("LINEALITY_DIM disagrees with the cones", fv.front().line, fv.front().column);
    auto counts = fan.f_vector().counts;
    bool same = counts.size() + 1 == fv.size();
    for (std::size_t i = 0; same && i < counts.size(); ++i)
        same = token_integer(fv[i + 1], 0) == static_cast<long long>(counts[i]);
    if (!same) throw ParseError("F_VECTOR disagrees with the cones", fv.front().line, fv.front().column);
    return fan;
}

inline Fan parse_fan(const std::string& text) {
    std::istringstream in(text);
    return read_fan(in);
}

// ---------------------------------------------------------------------------
// Certificates

inline std::string type_token(const TypeSet& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
    return s;
}

inline void write_certificate(std::ostream& out, const Certificate& cert, const TropicalMatrix& a) {
    out << "CERTIFICATE 5 " << cert.types.size() << '\n';
    for (std::size_t k = 0; k < 5; ++k) {
        out << "HYPERPLANE " << k + 1;
        for (const auto& h : cert.hyperplanes[k].coeffs) out << ' ' << h.get_str();
        out << '\n';
    }
    out << "STABLE_PAIR " << cert.stable_pair.first + 1 << ' ' << cert.stable_pair.second + 1 << '\n';
    out << "TYPES\n";
    for (std::size_t c = 0; c < cert.types.size(); ++c)
        out << c + 1 << ' ' << type_token(cert.types[c][0]) << ' ' << type_token(cert.types[c][1]) << '\n';
    out << "SELF_VERIFICATION " << (cert.verify(a).empty() ? "PASS" : "FAIL") << '\n';
}

namespace detail {

inline TypeSet parse_type(const Token& t) {
    TypeSet out;
    std::size_t start = 0;
    while (start <= t.text.size()) {
        auto comma = t.text.find(',', start);
        std::string part = t.text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        Token sub{part, t.line, t.column + start};
        out.push_back(static_cast<std::size_t>(token_integer(sub, 1, 5)) - 1);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw ParseError("type indices must increase", t.line, t.column);
    return out;
}

}  // namespace detail

inline Certificate read_certificate(std::istream& in) {
    TokenReader r(in);
    const auto& head = r.next_line(3, "certificate header");
    expect_keyword(head[0], "CERTIFICATE");
    token_integer(head[1], 5, 5);
    auto n = static_cast<std::size_t>(token_integer(head[2], 1, 1 << 16));
    Certificate cert;
    for (std::size_t k = 0; k < 5; ++k) {
        const auto& l = r.next_line(7, "hyperplane");
        expect_keyword(l[0], "HYPERPLANE");
        token_integer(l[1], static_cast<long long>(k + 1), static_cast<long long>(k + 1));
        for (std::size_t i = 0; i < 5; ++i) cert.hyperplanes[k].coeffs.push_back(token_rational(l[i + 2]));
    }
    const auto& pair = r.next_line(3, "stable pair");
    expect_keyword(pair[0], "STABLE_PAIR");
    auto i = static_cast<std::size_t>(token_integer(pair[1], 1, 5)) - 1;
    auto j = static_cast<std::size_t>(token_integer(pair[2], 1, 5)) - 1;
    if (i >= j) throw ParseError("stable pair must be increasing", pair[1].line, pair[1].column);
    cert.stable_pair = {i, j};
    expect_keyword(r.next_line(1, "types header")[0], "TYPES");
    for (std::size_t c = 0; c < n; ++c) {
        const auto& l = r.next_line(3, "type line");
        token_integer(l[0], static_cast<long long>(c + 1), static_cast<long long>(c + 1));
        cert.types.push_back({detail::parse_type(l[1]), detail::parse_type(l[2])});
    }
    if (!r.at_end()) {
        const auto& v = r.next_line(2, "verification line");
        expect_keyword(v[0], "SELF_VERIFICATION");
        if (v[1].text != "PASS" && v[1].text != "FAIL") throw ParseError("expected PASS or FAIL", v[1].line, v[1].column);
    }
    r.expect_end();
    return cert;
}

inline Certificate parse_certificate(const std::string& text) {
    std::istringstream in(text);
    return read_certificate(in);
}

}  // namespace tropbasis
