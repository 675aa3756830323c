#pragma once

// Line-oriented text formats for matrices and signed polynomials, plus the
// tokenizer shared by every other file format in the library.
//
// Blank lines and lines starting with '#' are ignored. Parse failures raise
// ParseError carrying the 1-based line and column of the offending token.

#include "tropbasis/errors.hpp"
#include "tropbasis/rational.hpp"
#include "tropbasis/trop_core.hpp"

#include <cctype>
#include <cstddef>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tropbasis {

struct Token {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

/// Whitespace-separated tokens grouped by source line.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) {
        std::string raw;
        std::size_t lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            std::vector<Token> toks;
            std::size_t i = 0;
            while (i < raw.size()) {
                while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
                if (i >= raw.size()) break;
                if (toks.empty() && raw[i] == '#') break;
                std::size_t start = i;
                while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
                toks.push_back({raw.substr(start, i - start), lineno, start + 1});
            }
            if (!toks.empty()) lines_.push_back(std::move(toks));
            last_line_ = lineno;
        }
    }

    bool at_end() const { return pos_ >= lines_.size(); }

    const std::vector<Token>& peek_line() const {
        if (at_end()) throw ParseError("unexpected end of input", last_line_ + 1, 1);
        return lines_[pos_];
    }

    const std::vector<Token>& next_line() {
        const auto& l = peek_line();
        ++pos_;
        return l;
    }

    /// Next line, which must have exactly `count` tokens.
    const std::vector<Token>& next_line(std::size_t count, const char* what) {
        const auto& l = next_line();
        if (l.size() != count) {
            const Token& t = l.size() > count ? l[count] : l.back();
            throw ParseError(std::string(what) + ": expected " + std::to_string(count) + " fields, found " +
                                 std::to_string(l.size()),
                             t.line, t.column);
        }
        return l;
    }

    void expect_end() const {
        if (!at_end()) {
            const Token& t = lines_[pos_].front();
            throw ParseError("unexpected trailing content", t.line, t.column);
        }
    }

    std::size_t last_line() const { return last_line_; }

private:
    std::vector<std::vector<Token>> lines_;
    std::size_t pos_ = 0;
    std::size_t last_line_ = 0;
};

inline Rational token_rational(const Token& t) {
    auto q = parse_rational(t.text);
    if (!q) throw ParseError("not a rational number: '" + t.text + "'", t.line, t.column);
    return *q;
}

inline long long token_integer(const Token& t, long long lo = std::numeric_limits<long long>::min(),
                               long long hi = std::numeric_limits<long long>::max()) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t.text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != t.text.size() || t.text.empty()) throw ParseError("not an integer: '" + t.text + "'", t.line, t.column);
    if (v < lo || v > hi) throw ParseError("integer out of range: " + t.text, t.line, t.column);
    return v;
}

inline void expect_keyword(const Token& t, const std::string& word) {
    if (t.text != word) throw ParseError("expected '" + word + "', found '" + t.text + "'", t.line, t.column);
}

// ---------------------------------------------------------------------------
// Matrix format: "d n" then d rows of n rationals.

inline TropicalMatrix read_matrix(TokenReader& r) {
    const auto& head = r.next_line(2, "matrix header");
    auto d = static_cast<std::size_t>(token_integer(head[0], 1, 1 << 16));
    auto n = static_cast<std::size_t>(token_integer(head[1], 1, 1 << 16));
    TropicalMatrix m(d, n);
    for (std::size_t i = 0; i < d; ++i) {
        const auto& row = r.next_line(n, "matrix row");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = token_rational(row[j]);
    }
    return m;
}

inline TropicalMatrix read_matrix(std::istream& in) {
    TokenReader r(in);
    auto m = read_matrix(r);
    r.expect_end();
    return m;
}

inline TropicalMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return read_matrix(in);
}

/// Several matrices of equal shape, one after another.
inline std::vector<TropicalMatrix> read_matrices(std::istream& in) {
    TokenReader r(in);
    std::vector<TropicalMatrix> out;
    while (!r.at_end()) out.push_back(read_matrix(r));
    return out;
}

inline void write_matrix(std::ostream& out, const TropicalMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).get_str();
        out << '\n';
    }
}

inline std::string format_matrix(const TropicalMatrix& m) {
    std::ostringstream o;
    write_matrix(o, m);
    return o.str();
}

// ---------------------------------------------------------------------------
// Polynomial format: "N" then one line per term "sign coeff_val e_1 ... e_N".

inline SignedTropPolynomial read_polynomial(std::istream& in) {
    TokenReader r(in);
    const auto& head = r.next_line(1, "polynomial header");
    auto n = static_cast<std::size_t>(token_integer(head[0], 1, 1 << 16));
    std::vector<SignedTerm> terms;
    while (!r.at_end()) {
        const auto& l = r.next_line(n + 2, "polynomial term");
        SignedTerm t;
        if (l[0].text == "+" || l[0].text == "+1" || l[0].text == "1")
            t.sign = 1;
        else if (l[0].text == "-" || l[0].text == "-1")
            t.sign = -1;
        else
            throw ParseError("sign must be + or -", l[0].line, l[0].column);
        t.coeff_val = token_rational(l[1]);
        for (std::size_t k = 0; k < n; ++k)
            t.exponent.push_back(static_cast<unsigned>(token_integer(l[k + 2], 0, 1 << 20)));
        for (std::size_t p = 0; p < terms.size(); ++p)
            if (terms[p].exponent == t.exponent)
                throw ParseError("exponent vector repeated", l[0].line, l[0].column);
        terms.push_back(std::move(t));
    }
    return SignedTropPolynomial(n, std::move(terms));
}

inline void write_polynomial(std::ostream& out, const SignedTropPolynomial& f) {
    out << f.num_vars() << '\n';
    for (const auto& t : f.terms()) {
        out << (t.sign > 0 ? '+' : '-') << ' ' << t.coeff_val.get_str();
        for (auto e : t.exponent) out << ' ' << e;
        out << '\n';
    }
}

}  // namespace tropbasis
