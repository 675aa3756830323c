#pragma once

// Exact rational scalars and dense rational vectors.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace tropbasis {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// n/d in lowest terms. mpq_class(n, d) alone leaves the fraction unreduced.
inline Rational make_rational(long n, long d = 1) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

/// Parses "p/q" or an integer. Returns nullopt on malformed text or a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) return std::nullopt;
    bool seen_slash = false;
    bool digit_before = false, digit_after = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/') {
            if (seen_slash || !digit_before) return std::nullopt;
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            return std::nullopt;
        }
    }
    if (seen_slash && !digit_after) return std::nullopt;
    std::string s(text[0] == '+' ? text.substr(1) : text);
    if (seen_slash) {
        auto slash = s.find('/');
        mpz_class den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
    }
    Rational q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].get_str();
    }
    return out + ")";
}

inline Rational dot(const Vector& a, const Vector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    }
    return s;
}

inline bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v = zero_vector(n);
    v[i] = 1;
    return v;
}

inline Vector operator+(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector operator*(const Rational& s, const Vector& a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

/// Positive rescaling to coprime integers. The zero vector is returned unchanged.
inline Vector primitive(const Vector& v) {
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& x : v) {
        if (sgn(x) == 0) continue;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num_mpz_t());
    }
    if (num_gcd == 0) return v;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * scale;
    return r;
}

inline mpz_class denominator_lcm(const Vector& v) {
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

inline bool lex_less(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct VectorHash {
    std::size_t operator()(const Vector& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const auto& x : v) {
            std::size_t a = static_cast<std::size_t>(mpz_get_si(x.get_num_mpz_t()));
            std::size_t b = static_cast<std::size_t>(mpz_get_si(x.get_den_mpz_t()));
            h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace tropbasis
