#pragma once

// Min-plus matrices, tropical determinants and rank, signed polynomials and initial forms.

#include "tropbasis/errors.hpp"
#include "tropbasis/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tropbasis {

/// d x n matrix of finite exact rationals.
class TropicalMatrix {
public:
    TropicalMatrix() = default;

    TropicalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) throw ArgumentError("tropical matrix needs positive dimensions");
    }

    TropicalMatrix(std::size_t rows, std::size_t cols, const std::vector<Rational>& row_major)
        : TropicalMatrix(rows, cols) {
        if (row_major.size() != rows * cols) throw ArgumentError("entry count does not match shape");
        data_ = row_major;
    }

    static TropicalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty() || rows[0].empty()) throw ArgumentError("tropical matrix needs positive dimensions");
        TropicalMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw ArgumentError("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static TropicalMatrix from_ints(const std::vector<std::vector<long>>& rows) {
        std::vector<std::vector<Rational>> r;
        for (const auto& row : rows) {
            std::vector<Rational> q;
            for (long x : row) q.emplace_back(x);
            r.push_back(std::move(q));
        }
        return from_rows(r);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Row-major flattening; variable x_ij sits at index i*n + j.
    const Vector& flatten() const { return data_; }

    Vector column(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<Vector> columns() const {
        std::vector<Vector> out;
        for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
        return out;
    }

    static TropicalMatrix from_columns(const std::vector<Vector>& cols) {
        if (cols.empty() || cols[0].empty()) throw ArgumentError("tropical matrix needs positive dimensions");
        TropicalMatrix m(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw ArgumentError("ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    TropicalMatrix submatrix(const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) const {
        TropicalMatrix m(r.size(), c.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j) m(i, j) = (*this)(r[i], c[j]);
        return m;
    }

    TropicalMatrix without_row(std::size_t drop) const {
        std::vector<std::size_t> r, c(cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != drop) r.push_back(i);
        std::iota(c.begin(), c.end(), 0);
        return submatrix(r, c);
    }

    TropicalMatrix transposed() const {
        TropicalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const TropicalMatrix& a, const TropicalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

/// Min-plus product: (A ⊙ B)_ij = min_k A_ik + B_kj.
inline TropicalMatrix tropical_product(const TropicalMatrix& a, const TropicalMatrix& b) {
    if (a.cols() != b.rows()) throw ArgumentError("inner dimensions differ");
    TropicalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Rational best = a(i, 0) + b(0, j);
            for (std::size_t k = 1; k < a.cols(); ++k) {
                Rational v = a(i, k) + b(k, j);
                if (v < best) best = v;
            }
            c(i, j) = best;
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Signed polynomials

struct SignedTerm {
    int sign = 1;                       // +1 or -1
    Rational coeff_val = 0;             // valuation of the coefficient
    std::vector<unsigned> exponent;     // length N, nonnegative

    friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

/// Polynomial over the valued field, recorded by the sign and valuation of each coefficient.
class SignedTropPolynomial {
public:
    SignedTropPolynomial() = default;

    SignedTropPolynomial(std::size_t num_vars, std::vector<SignedTerm> terms)
        : num_vars_(num_vars), terms_(std::move(terms)) {
        std::set<std::vector<unsigned>> seen;
        for (const auto& t : terms_) {
            if (t.sign != 1 && t.sign != -1) throw ArgumentError("term sign must be +1 or -1");
            if (t.exponent.size() != num_vars_) throw ArgumentError("exponent length does not match variable count");
            if (!seen.insert(t.exponent).second) throw ArgumentError("two terms share an exponent vector");
        }
    }

    std::size_t num_vars() const { return num_vars_; }
    const std::vector<SignedTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    /// coeff_val + <omega, exponent> of term i.
    Rational degree(std::size_t i, const Vector& omega) const {
        Rational d = terms_[i].coeff_val;
        for (std::size_t k = 0; k < num_vars_; ++k)
            if (terms_[i].exponent[k] != 0) d += omega[k] * terms_[i].exponent[k];
        return d;
    }

    /// Indices of the terms with minimal omega-degree.
    std::vector<std::size_t> minimizing_terms(const Vector& omega) const {
        if (omega.size() != num_vars_) throw ArgumentError("weight length does not match variable count");
        std::vector<std::size_t> best;
        Rational bv;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            Rational d = degree(i, omega);
            if (best.empty() || d < bv) {
                best = {i};
                bv = d;
            } else if (d == bv) {
                best.push_back(i);
            }
        }
        return best;
    }

    bool has_nonzero_coeff_val() const {
        return std::any_of(terms_.begin(), terms_.end(), [](const SignedTerm& t) { return sgn(t.coeff_val) != 0; });
    }

    friend bool operator==(const SignedTropPolynomial&, const SignedTropPolynomial&) = default;

private:
    std::size_t num_vars_ = 0;
    std::vector<SignedTerm> terms_;
};

/// Sum of the terms of minimal omega-degree.
inline SignedTropPolynomial initial_form(const SignedTropPolynomial& f, const Vector& omega) {
    if (f.empty()) throw ArgumentError("initial form of the empty polynomial");
    if (omega.size() != f.num_vars()) throw ArgumentError("weight length does not match variable count");
    std::vector<SignedTerm> kept;
    for (auto i : f.minimizing_terms(omega)) {
        SignedTerm t = f.terms()[i];
        t.coeff_val = 0;  // t is set to 1
        kept.push_back(std::move(t));
    }
    return SignedTropPolynomial(f.num_vars(), std::move(kept));
}

inline int permutation_sign(const std::vector<std::size_t>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> s(k);
    std::iota(s.begin(), s.end(), 0);
    for (;;) {
        out.push_back(s);
        std::size_t i = k;
        while (i > 0 && s[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++s[i - 1];
        for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
}

/// Minor with the given rows and columns of the d x n matrix of variables.
inline SignedTropPolynomial minor_polynomial(std::size_t d, std::size_t n, const std::vector<std::size_t>& rows,
                                             const std::vector<std::size_t>& cols) {
    const std::size_t k = rows.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SignedTerm> terms;
    do {
        SignedTerm t;
        t.sign = permutation_sign(perm);
        t.exponent.assign(d * n, 0);
        for (std::size_t a = 0; a < k; ++a) t.exponent[rows[a] * n + cols[perm[a]]] = 1;
        terms.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return SignedTropPolynomial(d * n, std::move(terms));
}

/// The k x k minors of the d x n matrix of variables, row subsets outer, column subsets inner.
inline std::vector<SignedTropPolynomial> minors(std::size_t d, std::size_t n, std::size_t k) {
    if (d == 0 || n == 0 || k == 0 || k > std::min(d, n)) throw ArgumentError("minors need 1 <= k <= min(d, n)");
    std::vector<SignedTropPolynomial> out;
    for (const auto& r : subsets(d, k))
        for (const auto& c : subsets(n, k)) out.push_back(minor_polynomial(d, n, r, c));
    return out;
}

/// Full determinant of the k x k matrix of variables.
inline SignedTropPolynomial determinant_polynomial(std::size_t k) { return minors(k, k, k).front(); }

// ---------------------------------------------------------------------------
// Tropical determinant

struct TropDetResult {
    Rational value;
    std::size_t optimal_count = 1;
    /// True when optimal_count is the exact number of optimal permutations. For
    /// k > kBruteForceMaxOrder only uniqueness is decided, reported as 1 or 2.
    bool count_exact = true;
    std::vector<std::vector<std::size_t>> optimal_permutations;  // filled for brute-force orders
};

inline constexpr std::size_t kBruteForceMaxOrder = 6;
inline constexpr std::size_t kTropDetMaxOrder = 12;

namespace detail {

inline TropDetResult trop_det_brute_force(const TropicalMatrix& m) {
    const std::size_t k = m.rows();
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    TropDetResult r;
    r.optimal_count = 0;
    do {
        Rational s = 0;
        for (std::size_t i = 0; i < k; ++i) s += m(i, p[i]);
        if (r.optimal_count == 0 || s < r.value) {
            r.value = s;
            r.optimal_count = 1;
            r.optimal_permutations = {p};
        } else if (s == r.value) {
            ++r.optimal_count;
            r.optimal_permutations.push_back(p);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return r;
}

// Shortest augmenting path assignment with dual potentials; u[i] + v[j] <= m(i,j).
struct Assignment {
    std::vector<std::size_t> row_to_col;
    Vector u, v;
};

inline Assignment min_cost_assignment(const TropicalMatrix& m) {
    const std::size_t n = m.rows();
    Vector u(n + 1), v(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        Vector minv(n + 1);
        std::vector<bool> minv_set(n + 1, false), used(n + 1, false);
        do {
            used[j0] = true;
            std::size_t i0 = p[j0], j1 = 0;
            Rational delta;
            bool delta_set = false;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                Rational cur = m(i0 - 1, j - 1) - u[i0] - v[j];
                if (!minv_set[j] || cur < minv[j]) {
                    minv[j] = cur;
                    minv_set[j] = true;
                    way[j] = j0;
                }
                if (!delta_set || minv[j] < delta) {
                    delta = minv[j];
                    delta_set = true;
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    Assignment a;
    a.row_to_col.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) a.row_to_col[p[j] - 1] = j - 1;
    a.u.assign(u.begin() + 1, u.end());
    a.v.assign(v.begin() + 1, v.end());
    return a;
}

// Another perfect matching on tight edges exists iff the tight graph has an
// alternating cycle through the found matching.
inline bool has_second_optimum(const TropicalMatrix& m, const Assignment& a) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> col_to_row(n);
    for (std::size_t i = 0; i < n; ++i) col_to_row[a.row_to_col[i]] = i;
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == a.row_to_col[i]) continue;
            if (m(i, j) - a.u[i] - a.v[j] == 0) succ[i].push_back(col_to_row[j]);
        }
    }
    std::vector<int> state(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (state[s]) continue;
        stack.push_back({s, 0});
        state[s] = 1;
        while (!stack.empty()) {
            auto& [node, idx] = stack.back();
            if (idx < succ[node].size()) {
                std::size_t nx = succ[node][idx++];
                if (state[nx] == 1) return true;
                if (state[nx] == 0) {
                    state[nx] = 1;
                    stack.push_back({nx, 0});
                }
            } else {
                state[node] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

}  // namespace detail

/// min over permutations of sum_i M[i, sigma(i)], with the multiplicity of the minimum.
inline TropDetResult trop_det(const TropicalMatrix& m) {
    if (!m.is_square()) throw ArgumentError("tropical determinant of a non-square matrix");
    if (m.rows() > kTropDetMaxOrder) throw ArgumentError("tropical determinant supports order at most 12");
    if (m.rows() <= kBruteForceMaxOrder) return detail::trop_det_brute_force(m);
    auto a = detail::min_cost_assignment(m);
    TropDetResult r;
    r.value = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) r.value += m(i, a.row_to_col[i]);
    r.optimal_count = detail::has_second_optimum(m, a) ? 2 : 1;
    r.count_exact = false;
    return r;
}

/// The minimum of the determinant is attained at least twice.
inline bool is_trop_singular(const TropicalMatrix& m) { return trop_det(m).optimal_count >= 2; }

struct RankReport {
    std::size_t rank = 0;
    /// Lexicographically first nonsingular submatrix of size `rank`.
    std::vector<std::size_t> rows, cols;
};

inline constexpr std::size_t kTropicalRankMaxOrder = 6;

/// Largest r with a tropically nonsingular r x r submatrix. Searches sizes upward and
/// stops at the first size where every submatrix is singular.
inline RankReport tropical_rank_report(const TropicalMatrix& m) {
    const std::size_t top = std::min(m.rows(), m.cols());
    if (top > kTropicalRankMaxOrder)
        throw ArgumentError("exhaustive tropical rank supports min(d, n) <= 6");
    RankReport rep;
    for (std::size_t r = 1; r <= top; ++r) {
        bool found = false;
        for (const auto& rs : subsets(m.rows(), r)) {
            for (const auto& cs : subsets(m.cols(), r)) {
                if (!is_trop_singular(m.submatrix(rs, cs))) {
                    rep.rank = r;
                    rep.rows = rs;
                    rep.cols = cs;
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) break;
    }
    return rep;
}

inline std::size_t tropical_rank(const TropicalMatrix& m) { return tropical_rank_report(m).rank; }

/// First nonsingular (r+1) x (r+1) submatrix, when one exists.
inline std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> nonsingular_submatrix(
    const TropicalMatrix& m, std::size_t size) {
    for (const auto& rs : subsets(m.rows(), size))
        for (const auto& cs : subsets(m.cols(), size))
            if (!is_trop_singular(m.submatrix(rs, cs))) return std::make_pair(rs, cs);
    return std::nullopt;
}

}  // namespace tropbasis
