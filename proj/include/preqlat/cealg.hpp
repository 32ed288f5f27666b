#pragma once

#include "preqlat/matrix.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/// Exterior algebra on the dual of a finite-dimensional Lie algebra and the
/// Chevalley-Eilenberg differential.
namespace preqlat::cealg {

/// Strictly increasing index tuple; the length is the degree.
using Monomial = std::vector<int>;

/// Lie algebra over Q given by structure constants [e_i, e_j] = sum_k c_ij^k e_k.
class LiePresentation {
public:
    LiePresentation() = default;
    explicit LiePresentation(std::vector<std::string> names)
        : dim_(static_cast<int>(names.size())),
          names_(std::move(names)),
          c_(static_cast<std::size_t>(dim_ * dim_ * dim_), Rational(0)) {
        if (dim_ <= 0) throw InputError("Lie algebra dimension must be positive");
    }

    int dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return names_; }

    /// Sets [e_i, e_j] = sum_k coeffs[k] e_k (and the antisymmetric partner).
    void set_bracket(int i, int j, const std::map<int, Rational>& coeffs) {
        check_index(i);
        check_index(j);
        if (i == j) throw InputError("bracket [e_i, e_i] must vanish");
        for (int k = 0; k < dim_; ++k) {
            c(i, j, k) = 0;
            c(j, i, k) = 0;
        }
        for (const auto& [k, v] : coeffs) {
            check_index(k);
            c(i, j, k) = v;
            c(j, i, k) = -v;
        }
    }

    const Rational& structure_constant(int i, int j, int k) const {
        return c_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
    }

    std::vector<Rational> bracket(const std::vector<Rational>& u, const std::vector<Rational>& v) const {
        std::vector<Rational> out(static_cast<std::size_t>(dim_), Rational(0));
        for (int i = 0; i < dim_; ++i) {
            if (u[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < dim_; ++j) {
                if (v[static_cast<std::size_t>(j)] == 0 || i == j) continue;
                const Rational w = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
                for (int k = 0; k < dim_; ++k)
                    if (structure_constant(i, j, k) != 0)
                        out[static_cast<std::size_t>(k)] += w * structure_constant(i, j, k);
            }
        }
        return out;
    }

    std::vector<Rational> unit(int i) const {
        std::vector<Rational> e(static_cast<std::size_t>(dim_), Rational(0));
        e[static_cast<std::size_t>(i)] = 1;
        return e;
    }

    bool has_integral_constants() const {
        for (const auto& x : c_)
            if (!is_integer(x)) return false;
        return true;
    }

private:
    Rational& c(int i, int j, int k) { return c_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)]; }
    void check_index(int i) const {
        if (i < 0 || i >= dim_) throw InputError("basis index out of range: " + std::to_string(i));
    }

    int dim_ = 0;
    std::vector<std::string> names_;
    std::vector<Rational> c_;
};

/// heis(r) x R with basis (x, p, z, h): [x, p] = r h, h and z central.
inline LiePresentation heisenberg_times_line(const Integer& r) {
    LiePresentation L({"x", "p", "z", "h"});
    L.set_bracket(0, 1, {{3, Rational(r)}});
    return L;
}

/// Abelian algebra with basis e1..em (the torus T^m).
inline LiePresentation abelian(int m) {
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i) names.push_back("e" + std::to_string(i));
    return LiePresentation(std::move(names));
}

struct ValidationReport {
    bool jacobi = true;
    std::optional<std::array<int, 3>> jacobi_violation;  ///< first failing (i, j, k)
    bool nilpotent = true;
    int nilpotency_class = 0;  ///< c with g^(c+1) = 0
    std::vector<std::size_t> lower_central_dims;

    bool ok() const { return jacobi && nilpotent; }
};

namespace detail {
// Row-reduced basis of span(vectors) over Q.
inline std::vector<std::vector<Rational>> span_basis(const std::vector<std::vector<Rational>>& vs,
                                                     std::size_t dim) {
    if (vs.empty()) return {};
    RatMatrix m = RatMatrix::from_rows(vs, dim);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < dim && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, rank);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && m(r, c) != 0) m.add_row(r, rank, Rational(-m(r, c) / m(rank, c)));
        ++rank;
    }
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(m.row(i));
    return out;
}
}  // namespace detail

inline ValidationReport validate_presentation(const LiePresentation& L) {
    ValidationReport rep;
    const int m = L.dim();
    for (int i = 0; i < m && rep.jacobi; ++i)
        for (int j = i + 1; j < m && rep.jacobi; ++j)
            for (int k = j + 1; k < m; ++k) {
                auto ei = L.unit(i), ej = L.unit(j), ek = L.unit(k);
                auto t1 = L.bracket(L.bracket(ei, ej), ek);
                auto t2 = L.bracket(L.bracket(ej, ek), ei);
                auto t3 = L.bracket(L.bracket(ek, ei), ej);
                bool zero = true;
                for (std::size_t s = 0; s < t1.size(); ++s)
                    if (t1[s] + t2[s] + t3[s] != 0) zero = false;
                if (!zero) {
                    rep.jacobi = false;
                    rep.jacobi_violation = std::array<int, 3>{i, j, k};
                    break;
                }
            }

    // Lower central series g^1 = g, g^(s+1) = [g, g^s].
    std::vector<std::vector<Rational>> current;
    for (int i = 0; i < m; ++i) current.push_back(L.unit(i));
    rep.lower_central_dims.push_back(current.size());
    for (;;) {
        std::vector<std::vector<Rational>> next;
        for (int i = 0; i < m; ++i)
            for (const auto& v : current) next.push_back(L.bracket(L.unit(i), v));
        next = detail::span_basis(next, static_cast<std::size_t>(m));
        rep.lower_central_dims.push_back(next.size());
        if (next.empty()) {
            rep.nilpotency_class = static_cast<int>(rep.lower_central_dims.size()) - 1;
            break;
        }
        if (next.size() == current.size()) {
            rep.nilpotent = false;
            rep.nilpotency_class = -1;
            break;
        }
        current = std::move(next);
    }
    return rep;
}

inline std::string monomial_name(const Monomial& m, const std::vector<std::string>& names) {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += "^";
        s += names.at(static_cast<std::size_t>(m[i])) + "*";
    }
    return s;
}

/// Element of Lambda^k of the dual, coefficients keyed by strictly increasing tuples.
class Cochain {
public:
    Cochain() = default;
    Cochain(int dim, int degree) : dim_(dim), degree_(degree) {}

    static Cochain monomial(int dim, Monomial idx, Rational coeff = 1) {
        Cochain c(dim, static_cast<int>(idx.size()));
        for (std::size_t s = 0; s < idx.size(); ++s) {
            if (idx[s] < 0 || idx[s] >= dim) throw std::invalid_argument("monomial index out of range");
            if (s > 0 && idx[s] <= idx[s - 1]) throw std::invalid_argument("monomial not strictly increasing");
        }
        c.add_term(idx, coeff);
        return c;
    }
    static Cochain unit(int dim) { return monomial(dim, {}, 1); }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& v) {
        if (v == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Cochain& operator+=(const Cochain& o) {
        check_compatible(o);
        for (const auto& [m, v] : o.terms_) add_term(m, v);
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        check_compatible(o);
        for (const auto& [m, v] : o.terms_) add_term(m, -v);
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Rational& s, const Cochain& a) {
        Cochain out(a.dim_, a.degree_);
        if (s == 0) return out;
        for (const auto& [m, v] : a.terms_) out.terms_.emplace(m, s * v);
        return out;
    }
    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    /// "x*^p* - 2 z*^h*" style rendering with the given basis names.
    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, v] : terms_) {
            Rational a = v;
            if (first) {
                if (a < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            }
            first = false;
            if (m.empty()) {
                out += to_string(a);
            } else {
                if (a != 1) out += to_string(a) + " ";
                out += monomial_name(m, names);
            }
        }
        return out;
    }

private:
    void check_compatible(const Cochain& o) const {
        if (o.dim_ != dim_ || o.degree_ != degree_) throw std::invalid_argument("cochain shape mismatch");
    }

    int dim_ = 0;
    int degree_ = 0;
    std::map<Monomial, Rational> terms_;
};

/// Sign of concatenating disjoint sorted tuples a, b into sorted order; 0 if they meet.
inline int shuffle_sign(const Monomial& a, const Monomial& b, Monomial& merged) {
    merged.clear();
    merged.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    long inversions = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            merged.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            inversions += static_cast<long>(a.size() - i);
            merged.push_back(b[j++]);
        } else {
            return 0;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

/// Exterior product.  Degree overflow yields the empty cochain of the summed degree.
inline Cochain wedge(const Cochain& a, const Cochain& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge of cochains on different algebras");
    Cochain out(a.dim(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.dim()) return out;
    Monomial merged;
    for (const auto& [ma, va] : a.terms())
        for (const auto& [mb, vb] : b.terms()) {
            int s = shuffle_sign(ma, mb, merged);
            if (s != 0) out.add_term(merged, s > 0 ? Rational(va * vb) : Rational(-(va * vb)));
        }
    return out;
}

/// delta e^k = -sum_{i<j} c_ij^k e^i ^ e^j, i.e. (delta a)(x, y) = -a([x, y]) on 1-cochains.
inline Cochain differential_of_generator(const LiePresentation& L, int k) {
    Cochain out(L.dim(), 2);
    for (int i = 0; i < L.dim(); ++i)
        for (int j = i + 1; j < L.dim(); ++j)
            if (L.structure_constant(i, j, k) != 0) out.add_term({i, j}, -L.structure_constant(i, j, k));
    return out;
}

/// Chevalley-Eilenberg differential, extended from degree 1 as an antiderivation.
inline Cochain ce_differential(const Cochain& c, const LiePresentation& L) {
    const int m = L.dim();
    if (c.dim() != m) throw std::invalid_argument("cochain does not match the Lie algebra");
    Cochain out(m, c.degree() + 1);
    if (c.degree() >= m) return out;
    std::vector<Cochain> dgen;
    dgen.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) dgen.push_back(differential_of_generator(L, k));

    for (const auto& [mono, coeff] : c.terms()) {
        for (std::size_t s = 0; s < mono.size(); ++s) {
            const Cochain& dg = dgen[static_cast<std::size_t>(mono[s])];
            if (dg.is_zero()) continue;
            Monomial prefix(mono.begin(), mono.begin() + static_cast<std::ptrdiff_t>(s));
            Monomial suffix(mono.begin() + static_cast<std::ptrdiff_t>(s) + 1, mono.end());
            Cochain term = wedge(wedge(Cochain::monomial(m, prefix), dg), Cochain::monomial(m, suffix));
            const Rational sign = (s % 2 == 0) ? Rational(coeff) : Rational(-coeff);
            out += sign * term;
        }
    }
    return out;
}

/// Degree-k monomials in lexicographic order: the canonical basis of Lambda^k.
inline std::vector<Monomial> monomial_basis(int dim, int k) {
    std::vector<Monomial> out;
    if (k < 0 || k > dim) return out;
    Monomial cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == dim - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}


/// Coordinates of a cochain in the canonical basis of its degree.
inline std::vector<Rational> to_coordinates(const Cochain& c) {
    auto basis = monomial_basis(c.dim(), c.degree());
    std::vector<Rational> v(basis.size(), Rational(0));
    for (std::size_t i = 0; i < basis.size(); ++i) v[i] = c.coefficient(basis[i]);
    return v;
}

inline Cochain from_coordinates(int dim, int degree, const std::vector<Rational>& v) {
    auto basis = monomial_basis(dim, degree);
    if (v.size() != basis.size()) throw std::invalid_argument("coordinate vector has wrong length");
    Cochain c(dim, degree);
    for (std::size_t i = 0; i < basis.size(); ++i) c.add_term(basis[i], v[i]);
    return c;
}

/// d_k : Lambda^k -> Lambda^(k+1) for k = 0..m-1, columns indexed by the source basis.
inline std::vector<RatMatrix> complex_matrices(const LiePresentation& L) {
    const int m = L.dim();
    std::vector<RatMatrix> out;
    for (int k = 0; k < m; ++k) {
        auto src = monomial_basis(m, k);
        auto dst = monomial_basis(m, k + 1);
        RatMatrix d(dst.size(), src.size());
        std::map<Monomial, std::size_t> row_of;
        for (std::size_t i = 0; i < dst.size(); ++i) row_of[dst[i]] = i;
        for (std::size_t j = 0; j < src.size(); ++j) {
            Cochain img = ce_differential(Cochain::monomial(m, src[j]), L);
            for (const auto& [mono, v] : img.terms()) d(row_of.at(mono), j) = v;
        }
        out.push_back(std::move(d));
    }
    return out;
}

/// Integer version; requires integral structure constants.
inline std::vector<IntMatrix> integral_complex_matrices(const LiePresentation& L) {
    if (!L.has_integral_constants()) throw InputError("non-integral basis");
    std::vector<IntMatrix> out;
    for (const auto& d : complex_matrices(L)) {
        IntMatrix di(d.rows(), d.cols());
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j) di(i, j) = numerator(d(i, j));
        out.push_back(std::move(di));
    }
    return out;
}

}  // namespace preqlat::cealg
