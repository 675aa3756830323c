#pragma once

// The valued field K = Q(t) with rational exponents: a Laurent polynomial in
// s = t^(1/m) is stored with its scale m and integer exponents in s. Rational
// functions are kept reduced with a monic denominator that does not vanish at
// t = 0, so val is the lowest exponent of the numerator.
//
// On top of the field arithmetic: rank over K, lift verification, and the
// construction of rank-3 lifts from hyperplane certificates.

#include "tropbasis/errors.hpp"
#include "tropbasis/generators.hpp"
#include "tropbasis/hyperarrange.hpp"
#include "tropbasis/linalg.hpp"
#include "tropbasis/rational.hpp"
#include "tropbasis/text_io.hpp"
#include "tropbasis/trop_core.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tropbasis {

class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(const Rational& coeff, const Rational& exponent) {
        LaurentPoly p;
        if (coeff == 0) return p;
        p.scale_ = exponent.get_den().get_si();
        p.terms_[exponent.get_num().get_si()] = coeff;
        return p;
    }

    static LaurentPoly constant(const Rational& c) { return monomial(c, 0); }

    bool is_zero() const { return terms_.empty(); }
    long scale() const { return scale_; }
    const std::map<long, Rational>& terms() const { return terms_; }

    /// Exponent of the lowest term, in units of t.
    Rational valuation() const {
        if (is_zero()) throw ArgumentError("valuation of zero");
        return make_rational(terms_.begin()->first, scale_);
    }

    Rational lowest_coefficient() const {
        if (is_zero()) throw ArgumentError("lowest coefficient of zero");
        return terms_.begin()->second;
    }

    /// Same polynomial with exponents in units of t^(1/m); m must be a multiple of scale().
    LaurentPoly rescaled(long m) const {
        if (m % scale_ != 0) throw ArgumentError("rescale to a non-multiple");
        LaurentPoly p;
        p.scale_ = m;
        for (const auto& [e, c] : terms_) p.terms_[e * (m / scale_)] = c;
        return p;
    }

    /// Value at t = s^m for a rational s, where m is a multiple of scale().
    Rational evaluate_at_root(const Rational& s, long m) const {
        Rational v = 0;
        for (const auto& [e, c] : terms_) {
            long k = e * (m / scale_);
            Rational power = 1;
            Rational base = k >= 0 ? s : Rational(1 / s);
            for (long i = 0; i < (k >= 0 ? k : -k); ++i) power *= base;
            v += c * power;
        }
        return v;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        long m = std::lcm(a.scale_, b.scale_);
        LaurentPoly x = a.rescaled(m), y = b.rescaled(m);
        for (const auto& [e, c] : y.terms_) {
            Rational& slot = x.terms_[e];
            slot += c;
            if (slot == 0) x.terms_.erase(e);
        }
        x.normalize();
        return x;
    }

    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly p = a;
        for (auto& [e, c] : p.terms_) c = -c;
        return p;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        long m = std::lcm(a.scale_, b.scale_);
        LaurentPoly x = a.rescaled(m), y = b.rescaled(m), out;
        out.scale_ = m;
        for (const auto& [e1, c1] : x.terms_)
            for (const auto& [e2, c2] : y.terms_) {
                Rational& slot = out.terms_[e1 + e2];
                slot += c1 * c2;
                if (slot == 0) out.terms_.erase(e1 + e2);
            }
        out.normalize();
        return out;
    }

    friend LaurentPoly operator*(const Rational& s, const LaurentPoly& a) { return LaurentPoly::constant(s) * a; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.scale_ == b.scale_ && a.terms_ == b.terms_;
    }

    /// Dense coefficients (ascending) of s^(-lowest) * p, in units of s = t^(1/m).
    std::vector<Rational> dense(long m) const {
        LaurentPoly p = rescaled(m);
        if (p.is_zero()) return {};
        long lo = p.terms_.begin()->first, hi = p.terms_.rbegin()->first;
        std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1), Rational(0));
        for (const auto& [e, c] : p.terms_) out[static_cast<std::size_t>(e - lo)] = c;
        return out;
    }

    static LaurentPoly from_dense(const std::vector<Rational>& coeffs, long shift, long m) {
        LaurentPoly p;
        p.scale_ = m;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) p.terms_[shift + static_cast<long>(i)] = coeffs[i];
        p.normalize();
        return p;
    }

    long lowest_exponent(long m) const { return rescaled(m).terms_.begin()->first; }

private:
    // Smallest scale that keeps all exponents integral.
    void normalize() {
        if (terms_.empty()) {
            scale_ = 1;
            return;
        }
        long g = scale_;
        for (const auto& [e, c] : terms_) g = std::gcd(g, e < 0 ? -e : e);
        if (g <= 1) return;
        std::map<long, Rational> t;
        for (auto& [e, c] : terms_) t[e / g] = c;
        terms_ = std::move(t);
        scale_ /= g;
    }

    long scale_ = 1;
    std::map<long, Rational> terms_;
};

namespace detail {

using Dense = std::vector<Rational>;

inline void trim(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::pair<Dense, Dense> divmod(Dense a, const Dense& b) {
    trim(a);
    Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return {q, a};
}

inline Dense monic(Dense p) {
    trim(p);
    if (p.empty()) return p;
    Rational lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

inline Dense gcd(Dense a, Dense b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Dense r = divmod(a, b).second;
        a = std::move(b);
        b = monic(std::move(r));
    }
    return monic(std::move(a));
}

}  // namespace detail

/// Element of K as a reduced fraction.
class RatFunc {
public:
    RatFunc() : den_(LaurentPoly::constant(1)) {}
    RatFunc(const LaurentPoly& p) : num_(p), den_(LaurentPoly::constant(1)) {}  // NOLINT implicit
    RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw ArgumentError("zero denominator");
        reduce();
    }

    static RatFunc monomial(const Rational& coeff, const Rational& exponent) {
        return RatFunc(LaurentPoly::monomial(coeff, exponent));
    }

    const LaurentPoly& numerator() const { return num_; }
    const LaurentPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw ArgumentError("division by zero in K");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Value at t = s^m; nullopt where the denominator vanishes.
    std::optional<Rational> evaluate_at_root(const Rational& s, long m) const {
        Rational d = den_.evaluate_at_root(s, m);
        if (d == 0) return std::nullopt;
        return num_.evaluate_at_root(s, m) / d;
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::constant(1);
            return;
        }
        long m = std::lcm(num_.scale(), den_.scale());
        long shift = num_.lowest_exponent(m) - den_.lowest_exponent(m);
        detail::Dense p = num_.dense(m), q = den_.dense(m);
        detail::Dense g = detail::gcd(p, q);
        p = detail::divmod(p, g).first;
        q = detail::divmod(q, g).first;
        Rational lc = q.back();
        for (auto& c : p) c /= lc;
        for (auto& c : q) c /= lc;
        num_ = LaurentPoly::from_dense(p, shift, m);
        den_ = LaurentPoly::from_dense(q, 0, m);
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

inline Rational val(const RatFunc& f) {
    if (f.is_zero()) throw ArgumentError("valuation of zero");
    return f.numerator().valuation() - f.denominator().valuation();
}

/// d x n matrix over K.
class LiftMatrix {
public:
    LiftMatrix() = default;
    LiftMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RatFunc& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const RatFunc& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Common multiple of all exponent scales.
    long scale() const {
        long m = 1;
        for (const auto& e : data_) m = std::lcm(m, std::lcm(e.numerator().scale(), e.denominator().scale()));
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RatFunc> data_;
};

/// Quotient of an exact division in Q[t^(1/m), t^(-1/m)], by sparse long division
/// from the top term.
inline LaurentPoly exact_quotient(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw ArgumentError("division by zero polynomial");
    const long m = std::lcm(a.scale(), b.scale());
    LaurentPoly rem = a.rescaled(m), div = b.rescaled(m), q;
    const long b_hi = div.terms().rbegin()->first, b_lo = div.terms().begin()->first;
    const Rational b_lead = div.terms().rbegin()->second;
    while (!rem.is_zero()) {
        long hi = rem.terms().rbegin()->first, lo = rem.terms().begin()->first;
        if (hi - b_hi < lo - b_lo) throw InternalInvariantError("inexact Laurent polynomial division");
        LaurentPoly step = LaurentPoly::monomial(rem.terms().rbegin()->second / b_lead, make_rational(hi - b_hi, m));
        q = q + step;
        rem = (rem - step * div).rescaled(m);
    }
    return q;
}

/// Scales each column by the product of its distinct denominators, then runs
/// fraction-free (Bareiss) elimination over the Laurent polynomial ring, where
/// every division is exact.
inline std::size_t rank_over_K(const LiftMatrix& a) {
    std::vector<std::vector<LaurentPoly>> m(a.rows(), std::vector<LaurentPoly>(a.cols()));
    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::vector<LaurentPoly> dens;
        LaurentPoly common = LaurentPoly::constant(1);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const auto& d = a(i, j).denominator();
            if (std::find(dens.begin(), dens.end(), d) == dens.end()) {
                dens.push_back(d);
                common = common * d;
            }
        }
        for (std::size_t i = 0; i < a.rows(); ++i)
            m[i][j] = a(i, j).numerator() * exact_quotient(common, a(i, j).denominator());
    }
    LaurentPoly prev = LaurentPoly::constant(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && m[p][c].is_zero()) ++p;
        if (p == a.rows()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            for (std::size_t j = c + 1; j < a.cols(); ++j)
                m[i][j] = exact_quotient(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev);
            m[i][c] = LaurentPoly();
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

/// Entrywise valuations equal the target and the rank over K is at most r.
inline bool verify_lift(const LiftMatrix& lift, const TropicalMatrix& target, std::size_t r) {
    if (lift.rows() != target.rows() || lift.cols() != target.cols()) throw ArgumentError("lift shape mismatch");
    for (std::size_t i = 0; i < lift.rows(); ++i)
        for (std::size_t j = 0; j < lift.cols(); ++j)
            if (lift(i, j).is_zero() || val(lift(i, j)) != target(i, j)) return false;
    return rank_over_K(lift) <= r;
}

/// Coefficients of a linear form sum_i l_i x_i over K.
using LinearFormK = std::vector<RatFunc>;

inline RatFunc evaluate_form(const LinearFormK& l, const std::vector<RatFunc>& x) {
    if (l.size() != x.size()) throw ArgumentError("linear form and vector lengths differ");
    RatFunc s;
    for (std::size_t i = 0; i < l.size(); ++i) s = s + l[i] * x[i];
    return s;
}

inline constexpr long kLiftCoefficientMax = 10000;

/// sum_i c_i t^(h_i) x_i with c_i drawn from {1..10^4} by a seeded generator.
inline LinearFormK lift_hyperplane(const Hyperplane& h, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_int_distribution<long> coeff(1, kLiftCoefficientMax);
    LinearFormK l;
    for (const auto& hi : h.coeffs) l.push_back(RatFunc::monomial(coeff(rng), hi));
    return l;
}

inline constexpr int kDefaultLiftRetries = 8;

/// A vector x over K with l(x) = l2(x) = 0 and val(x_i) = w_i. Fixes d - 2
/// coordinates to c t^(w_i) with random c and solves for the other two; tries
/// the coordinate subsets in lexicographic order, `retries` times each.
inline std::optional<std::vector<RatFunc>> lift_point_in_codim2(const Vector& w, const LinearFormK& l,
                                                                const LinearFormK& l2, std::uint64_t seed,
                                                                int retries = kDefaultLiftRetries) {
    const std::size_t d = w.size();
    if (l.size() != d || l2.size() != d) throw ArgumentError("point and form lengths differ");
    if (d < 2) throw ArgumentError("codimension-2 lifts need at least two coordinates");
    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_int_distribution<long> coeff(1, kLiftCoefficientMax);
    for (const auto& fixed : subsets(d, d - 2)) {
        std::vector<std::size_t> solved;
        for (std::size_t k = 0; k < d; ++k)
            if (std::find(fixed.begin(), fixed.end(), k) == fixed.end()) solved.push_back(k);
        const std::size_t a = solved[0], b = solved[1];
        RatFunc det = l[a] * l2[b] - l[b] * l2[a];
        if (det.is_zero()) continue;
        for (int attempt = 0; attempt < retries; ++attempt) {
            std::vector<RatFunc> x(d);
            RatFunc r1, r2;
            for (auto k : fixed) {
                x[k] = RatFunc::monomial(coeff(rng), w[k]);
                r1 = r1 - l[k] * x[k];
                r2 = r2 - l2[k] * x[k];
            }
            x[a] = (r1 * l2[b] - l[b] * r2) / det;
            x[b] = (l[a] * r2 - r1 * l2[a]) / det;
            if (x[a].is_zero() || x[b].is_zero()) continue;
            if (val(x[a]) != w[a] || val(x[b]) != w[b]) continue;
            return x;
        }
    }
    return std::nullopt;
}

struct Rank3Lift {
    LiftMatrix matrix;
    LinearFormK form, form2;  // lifts of the certificate's stable pair
    std::uint64_t seed_used = 0;
};

/// Lifts the stable pair of `cert` and every column of `a` into the common kernel
/// of the two lifted forms. Resamples the forms up to `retry_limit` times.
inline Rank3Lift build_rank3_lift(const TropicalMatrix& a, const Certificate& cert, std::uint64_t seed,
                                  int retry_limit = kDefaultLiftRetries) {
    auto problems = cert.verify(a);
    if (!problems.empty()) throw PreconditionError("certificate does not match the matrix: " + problems.front());
    auto [i, j] = cert.stable_pair;
    auto cols = a.columns();
    for (int attempt = 0; attempt < retry_limit; ++attempt) {
        std::uint64_t s = splitmix64(seed + static_cast<std::uint64_t>(attempt));
        Rank3Lift out{LiftMatrix(a.rows(), a.cols()), lift_hyperplane(cert.hyperplanes[i], s),
                      lift_hyperplane(cert.hyperplanes[j], splitmix64(s ^ 0x5bd1e995ULL)), s};
        bool ok = true;
        for (std::size_t c = 0; c < cols.size() && ok; ++c) {
            auto x = lift_point_in_codim2(cols[c], out.form, out.form2, splitmix64(s ^ c), retry_limit);
            if (!x) {
                ok = false;
                break;
            }
            for (std::size_t r = 0; r < a.rows(); ++r) out.matrix(r, c) = (*x)[r];
        }
        if (!ok) continue;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::vector<RatFunc> x;
            for (std::size_t r = 0; r < a.rows(); ++r) x.push_back(out.matrix(r, c));
            if (!evaluate_form(out.form, x).is_zero() || !evaluate_form(out.form2, x).is_zero())
                throw InternalInvariantError("lifted column left the kernel of the lifted forms");
        }
        if (!verify_lift(out.matrix, a, 3)) throw InternalInvariantError("assembled lift fails verification");
        return out;
    }
    throw InternalInvariantError("no generic lift found after " + std::to_string(retry_limit) + " resamples");
}

// ---------------------------------------------------------------------------
// Text form
//
// A Laurent polynomial is written as whitespace-separated terms "c" or "c*t^e"
// with rational c and e, or "0". An element of K is "NUM / DEN". A lift file is a
// "d n" header followed by d*n element lines in row-major order.

inline std::string format_laurent(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : p.terms()) {
        if (!s.empty()) s += ' ';
        Rational ex = make_rational(e, p.scale());
        s += c.get_str();
        if (ex != 0) s += "*t^" + ex.get_str();
    }
    return s;
}

inline std::string format_ratfunc(const RatFunc& f) {
    return format_laurent(f.numerator()) + " / " + format_laurent(f.denominator());
}

namespace detail {

inline LaurentPoly parse_laurent_tokens(const std::vector<Token>& toks, std::size_t begin, std::size_t end) {
    if (begin == end) {
        std::size_t line = toks.empty() ? 0 : toks.front().line;
        throw ParseError("empty Laurent polynomial", line, begin < toks.size() ? toks[begin].column : 1);
    }
    LaurentPoly p;
    for (std::size_t k = begin; k < end; ++k) {
        const Token& t = toks[k];
        auto star = t.text.find("*t^");
        std::string coeff = t.text.substr(0, star);
        auto c = parse_rational(coeff);
        if (!c) throw ParseError("bad coefficient '" + coeff + "'", t.line, t.column);
        Rational e = 0;
        if (star != std::string::npos) {
            std::string ex = t.text.substr(star + 3);
            auto q = parse_rational(ex);
            if (!q) throw ParseError("bad exponent '" + ex + "'", t.line, t.column + star + 3);
            e = *q;
        }
        p = p + LaurentPoly::monomial(*c, e);
    }
    return p;
}

}  // namespace detail

inline RatFunc parse_ratfunc_line(const std::vector<Token>& toks) {
    std::size_t slash = toks.size();
    for (std::size_t k = 0; k < toks.size(); ++k)
        if (toks[k].text == "/") slash = k;
    LaurentPoly num = detail::parse_laurent_tokens(toks, 0, slash == toks.size() ? toks.size() : slash);
    LaurentPoly den = slash == toks.size() ? LaurentPoly::constant(1)
                                           : detail::parse_laurent_tokens(toks, slash + 1, toks.size());
    if (den.is_zero()) throw ParseError("zero denominator", toks[slash].line, toks[slash].column);
    return RatFunc(num, den);
}

inline RatFunc parse_ratfunc(const std::string& text) {
    std::istringstream in(text);
    TokenReader r(in);
    auto f = parse_ratfunc_line(r.next_line());
    r.expect_end();
    return f;
}

inline LiftMatrix read_lift(std::istream& in) {
    TokenReader r(in);
    const auto& head = r.next_line(2, "lift header");
    auto d = static_cast<std::size_t>(token_integer(head[0], 1, 1000));
    auto n = static_cast<std::size_t>(token_integer(head[1], 1, 1000));
    LiftMatrix m(d, n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_ratfunc_line(r.next_line());
    r.expect_end();
    return m;
}

inline void write_lift(std::ostream& out, const LiftMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out << format_ratfunc(m(i, j)) << '\n';
}

}  // namespace tropbasis
