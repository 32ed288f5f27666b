#pragma once

// Independent reference computations used by the tests.  None of these call
// the engine routines they are compared against.

#include "preqlat/cealg.hpp"
#include "preqlat/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using preqlat::Integer;
using preqlat::Rational;
using QVec = std::vector<Rational>;

/// Leibniz determinant, fine for the small sizes used in tests.
inline Rational leibniz_det(const std::vector<QVec>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rational total = 0;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        Rational term = inv % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n && term != 0; ++i) term *= a[i][perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Determinant by Gaussian elimination over Q.
inline Rational gauss_det(std::vector<QVec> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i)
            if (a[i][c] != 0) {
                Rational f = a[i][c] / a[c][c];
                for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
            }
    }
    return det;
}

/// alpha(v_1, ..., v_k) for an alternating cochain given by monomial coefficients.
inline Rational evaluate(const preqlat::cealg::Cochain& alpha, const std::vector<QVec>& vs) {
    Rational total = 0;
    for (const auto& [I, c] : alpha.terms()) {
        std::vector<QVec> M(I.size(), QVec(vs.size()));
        for (std::size_t a = 0; a < I.size(); ++a)
            for (std::size_t b = 0; b < vs.size(); ++b) M[a][b] = vs[b][static_cast<std::size_t>(I[a])];
        total += c * leibniz_det(M);
    }
    return total;
}

/// (delta alpha)(x_0..x_k) = sum_{i<j} (-1)^{i+j} alpha([x_i, x_j], x_0, ..^i..^j.., x_k)
inline Rational delta_on(const preqlat::cealg::Cochain& alpha, const preqlat::cealg::LiePresentation& L,
                         const std::vector<QVec>& xs) {
    Rational total = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            std::vector<QVec> args{L.bracket(xs[i], xs[j])};
            for (std::size_t l = 0; l < xs.size(); ++l)
                if (l != i && l != j) args.push_back(xs[l]);
            total += ((i + j) % 2 ? -1 : 1) * evaluate(alpha, args);
        }
    return total;
}

/// delta alpha built coefficientwise from the defining formula on basis tuples.
inline preqlat::cealg::Cochain delta_by_evaluation(const preqlat::cealg::Cochain& alpha,
                                                   const preqlat::cealg::LiePresentation& L) {
    const int m = L.dim();
    preqlat::cealg::Cochain out(m, alpha.degree() + 1);
    for (const auto& J : preqlat::cealg::monomial_basis(m, alpha.degree() + 1)) {
        std::vector<QVec> xs;
        for (int j : J) xs.push_back(L.unit(j));
        out.add_term(J, delta_on(alpha, L, xs));
    }
    return out;
}

/// Rank over Q by plain Gaussian elimination.
inline std::size_t rank(std::vector<QVec> a) {
    std::size_t r = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != r && a[i][c] != 0) {
                Rational f = a[i][c] / a[r][c];
                for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
            }
        ++r;
    }
    return r;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
inline std::vector<Integer> invariant_factors(const std::vector<std::vector<Integer>>& a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<Integer> D{1}, out;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        choose(rows, k, 0, cur, rs);
        choose(cols, k, 0, cur, cs);
        Integer g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<QVec> M(k, QVec(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) M[i][j] = Rational(a[r[i]][c[j]]);
                Integer v = preqlat::numerator(leibniz_det(M));
                g = preqlat::gcd(g, v < 0 ? Integer(-v) : v);
            }
        if (g == 0) break;
        out.push_back(g / D.back());
        D.push_back(g);
    }
    return out;
}

/// Real cos/sin description of a trig polynomial, read once from its JSON form.
struct RealSeries {
    struct Term {
        std::vector<int> k;
        double a = 0, b = 0;
    };
    std::vector<Term> terms;

    explicit RealSeries(const preqlat::torus::TrigPoly& f) {
        for (const auto& t : f.to_json())
            terms.push_back({t["k"].get<std::vector<int>>(),
                             static_cast<double>(preqlat::parse_rational(t["cos"].get<std::string>())),
                             static_cast<double>(preqlat::parse_rational(t["sin"].get<std::string>()))});
    }

    double operator()(const std::vector<double>& x) const {
        double total = 0;
        for (const auto& t : terms) {
            double phase = 0;
            for (std::size_t j = 0; j < x.size(); ++j) phase += t.k[j] * x[j];
            total += t.a * std::cos(phase) + t.b * std::sin(phase);
        }
        return total;
    }
};

/// Evaluates a real trig polynomial from its cos/sin description with std::cos and std::sin.
inline double eval_real(const preqlat::torus::TrigPoly& f, const std::vector<double>& x) { return RealSeries(f)(x); }

/// Mean over T^m by an n-point-per-axis uniform grid (exact for modes below n).
inline double grid_mean(const preqlat::torus::TrigPoly& f, int n = 32) {
    const int m = f.dim();
    const RealSeries series(f);
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    double total = 0;
    long count = 0;
    for (;;) {
        std::vector<double> x;
        for (int i : idx) x.push_back(2 * std::numbers::pi * i / n);
        total += series(x);
        ++count;
        int d = 0;
        while (d < m && ++idx[static_cast<std::size_t>(d)] == n) idx[static_cast<std::size_t>(d++)] = 0;
        if (d == m) break;
    }
    return total / static_cast<double>(count);
}

/// Central difference of f along one axis.
inline double numeric_partial(const preqlat::torus::TrigPoly& f, std::vector<double> x, int axis) {
    const double h = 1e-5;
    x[static_cast<std::size_t>(axis)] += h;
    const double up = eval_real(f, x);
    x[static_cast<std::size_t>(axis)] -= 2 * h;
    return (up - eval_real(f, x)) / (2 * h);
}

/// int_0^{2 pi} f(point + t e_axis) dt by the trapezoid rule (exact for low modes).
inline double line_integral(const preqlat::torus::TrigPoly& f, std::vector<double> point, int axis, int n = 64) {
    const RealSeries series(f);
    double total = 0;
    for (int i = 0; i < n; ++i) {
        point[static_cast<std::size_t>(axis)] = 2 * std::numbers::pi * i / n;
        total += series(point);
    }
    return total * 2 * std::numbers::pi / n;
}

}  // namespace oracle
