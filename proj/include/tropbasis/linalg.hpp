#pragma once

// Row reduction over Q.

#include "tropbasis/rational.hpp"

#include <cstddef>
#include <vector>

namespace tropbasis {

/// Reduced row echelon form of a row set: each row has a leading 1 at `pivots[r]`
/// and zeros in every other pivot column.
struct RowEchelon {
    std::size_t columns = 0;
    std::vector<Vector> rows;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return rows.size(); }

    /// Eliminates the pivot columns from v. The result is zero iff v lies in the row span.
    Vector reduce(Vector v) const {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Rational f = v[pivots[r]];
            if (sgn(f) == 0) continue;
            for (std::size_t c = 0; c < columns; ++c) {
                if (sgn(rows[r][c]) != 0) v[c] -= f * rows[r][c];
            }
        }
        return v;
    }

    bool in_span(const Vector& v) const { return is_zero(reduce(v)); }
};

inline RowEchelon rref(std::vector<Vector> m, std::size_t columns) {
    RowEchelon out;
    out.columns = columns;
    std::size_t r = 0;
    for (std::size_t c = 0; c < columns && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && sgn(m[p][c]) == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (std::size_t k = c; k < columns; ++k) m[r][k] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rational f = m[i][c];
            for (std::size_t k = c; k < columns; ++k) {
                if (sgn(m[r][k]) != 0) m[i][k] -= f * m[r][k];
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

inline std::size_t rank(const std::vector<Vector>& m, std::size_t columns) {
    return rref(m, columns).rank();
}

/// Basis of {x : <row, x> = 0 for every row}.
inline std::vector<Vector> nullspace(const std::vector<Vector>& m, std::size_t columns) {
    RowEchelon e = rref(m, columns);
    std::vector<bool> is_pivot(columns, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < columns; ++f) {
        if (is_pivot[f]) continue;
        Vector v = zero_vector(columns);
        v[f] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Inverse of a square matrix, or an empty result when singular.
inline std::vector<Vector> inverse(const std::vector<Vector>& m) {
    const std::size_t n = m.size();
    std::vector<Vector> aug(n, zero_vector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    RowEchelon e = rref(aug, 2 * n);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) return {};
    std::vector<Vector> inv(n, zero_vector(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
    }
    return inv;
}

}  // namespace tropbasis
