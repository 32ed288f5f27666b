#pragma once

#include "preqlat/matrix.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace preqlat {

/// A = U * D * V with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
/// The inverses are carried along since cohomology reduction needs them.
struct SmithDecomposition {
    IntMatrix U, D, V;
    IntMatrix U_inv, V_inv;

    std::size_t rank() const {
        std::size_t r = 0;
        while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0) ++r;
        return r;
    }
    std::vector<Integer> invariant_factors() const {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < rank(); ++i) out.push_back(D(i, i));
        return out;
    }
};

namespace detail {

// Tracks D = L * A * R together with U = L^-1, V = R^-1.
struct SmithState {
    IntMatrix D, L, U, R, V;

    explicit SmithState(const IntMatrix& a)
        : D(a),
          L(IntMatrix::identity(a.rows())),
          U(IntMatrix::identity(a.rows())),
          R(IntMatrix::identity(a.cols())),
          V(IntMatrix::identity(a.cols())) {}

    void swap_rows(std::size_t i, std::size_t j) {
        D.swap_rows(i, j);
        L.swap_rows(i, j);
        U.swap_cols(i, j);
    }
    void add_row(std::size_t i, std::size_t j, const Integer& c) {  // row_i += c row_j
        D.add_row(i, j, c);
        L.add_row(i, j, c);
        U.add_col(j, i, Integer(-c));
    }
    void negate_row(std::size_t i) {
        D.negate_row(i);
        L.negate_row(i);
        U.negate_col(i);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        D.swap_cols(i, j);
        R.swap_cols(i, j);
        V.swap_rows(i, j);
    }
    void add_col(std::size_t j, std::size_t i, const Integer& c) {  // col_j += c col_i
        D.add_col(j, i, c);
        R.add_col(j, i, c);
        V.add_row(i, j, Integer(-c));
    }
};

}  // namespace detail

/// Smith normal form by elimination, always pivoting on the smallest nonzero
/// entry of the remaining block to keep coefficient growth down.
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    detail::SmithState s(a);
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Smallest nonzero entry in the trailing block.
            std::optional<std::pair<std::size_t, std::size_t>> best;
            Integer best_abs;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const Integer& x = s.D(i, j);
                    if (x == 0) continue;
                    Integer ax = abs(x);
                    if (!best || ax < best_abs) {
                        best = {i, j};
                        best_abs = ax;
                        if (ax == 1) goto found;
                    }
                }
        found:
            if (!best) break;
            s.swap_rows(t, best->first);
            s.swap_cols(t, best->second);

            bool dirty = false;
            const Integer pivot = s.D(t, t);
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s.D(i, t) == 0) continue;
                Integer q = s.D(i, t) / pivot;
                s.add_row(i, t, Integer(-q));
                if (s.D(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.D(t, j) == 0) continue;
                Integer q = s.D(t, j) / pivot;
                s.add_col(j, t, Integer(-q));
                if (s.D(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Divisibility: pivot must divide the whole trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (s.D(i, j) % pivot != 0) {
                        s.add_row(t, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (t < m && t < n && s.D(t, t) < 0) s.negate_row(t);
    }

    return SmithDecomposition{std::move(s.U), std::move(s.D), std::move(s.V), std::move(s.L),
                              std::move(s.R)};
}

/// Basis (as columns, returned as vectors) of the integer kernel {x : A x = 0}.
/// The basis spans a saturated sublattice of Z^n.
inline std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& a) {
    auto snf = smith_normal_form(a);
    std::vector<std::vector<Integer>> out;
    for (std::size_t j = snf.rank(); j < a.cols(); ++j) out.push_back(snf.V_inv.col(j));
    return out;
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result is a basis.
inline std::vector<std::vector<Integer>> hermite_normal_form(std::vector<std::vector<Integer>> rows,
                                                             std::size_t width) {
    IntMatrix h = IntMatrix::from_rows(rows, width);
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < h.rows(); ++c) {
        for (;;) {
            std::optional<std::size_t> piv;
            for (std::size_t i = r; i < h.rows(); ++i)
                if (h(i, c) != 0 && (!piv || abs(h(i, c)) < abs(h(*piv, c)))) piv = i;
            if (!piv) break;
            h.swap_rows(r, *piv);
            bool clean = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0) continue;
                h.add_row(i, r, Integer(-(h(i, c) / h(r, c))));
                if (h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < h.rows() && h(r, c) != 0) {
            if (h(r, c) < 0) h.negate_row(r);
            for (std::size_t i = 0; i < r; ++i) {
                Integer q = (h(i, c) - mod_floor(h(i, c), h(r, c))) / h(r, c);
                h.add_row(i, r, Integer(-q));
            }
            ++r;
        }
    }
    std::vector<std::vector<Integer>> out;
    for (std::size_t i = 0; i < r; ++i) out.push_back(h.row(i));
    return out;
}

inline Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    RatMatrix m = to_rational(a);
    Rational det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r)
            if (m(r, c) != 0) m.add_row(r, c, Rational(-m(r, c) / m(c, c)));
    }
    return numerator(det);
}

}  // namespace preqlat
