#pragma once

#include "preqlat/cealg.hpp"
#include "preqlat/trigpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace preqlat::torus {

using cealg::Monomial;

/// Differential k-form sum_I f_I dx_I on T^m with trig-polynomial coefficients.
class TorusForm {
public:
    TorusForm() = default;
    TorusForm(int dim, int degree) : dim_(dim), degree_(degree) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("torus dimension out of range");
        if (degree < 0 || degree > dim) throw std::invalid_argument("form degree out of range");
    }

    static TorusForm function(const TrigPoly& f) {
        TorusForm F(f.dim(), 0);
        F.add(Monomial{}, f);
        return F;
    }
    /// f dx_{i1} ^ ... ^ dx_{ik}; the indices need not be sorted.
    static TorusForm term(const TrigPoly& f, Monomial axes) {
        TorusForm F(f.dim(), static_cast<int>(axes.size()));
        int sign = sort_with_sign(axes);
        if (sign != 0) F.add(axes, sign > 0 ? f : -f);
        return F;
    }
    static TorusForm dx(int dim, int axis) { return term(TrigPoly::constant(dim, 1), {axis}); }
    static TorusForm constant(int dim, Monomial axes, const Rational& c = 1) {
        return term(TrigPoly::constant(dim, c), std::move(axes));
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const std::map<Monomial, TrigPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TrigPoly coefficient(const Monomial& I) const {
        auto it = terms_.find(I);
        return it == terms_.end() ? TrigPoly(dim_) : it->second;
    }

    void add(const Monomial& I, const TrigPoly& f) {
        if (static_cast<int>(I.size()) != degree_) throw std::invalid_argument("monomial has wrong degree");
        if (f.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(I, f);
        if (!inserted) {
            it->second += f;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Largest |k_j| among coefficients.
    int max_mode() const {
        int d = 0;
        for (const auto& [I, f] : terms_) d = std::max(d, f.degree());
        return d;
    }

    TorusForm& operator+=(const TorusForm& o) {
        check(o);
        for (const auto& [I, f] : o.terms_) add(I, f);
        return *this;
    }
    TorusForm& operator-=(const TorusForm& o) {
        check(o);
        for (const auto& [I, f] : o.terms_) add(I, -f);
        return *this;
    }
    friend TorusForm operator+(TorusForm a, const TorusForm& b) { return a += b; }
    friend TorusForm operator-(TorusForm a, const TorusForm& b) { return a -= b; }
    friend TorusForm operator-(const TorusForm& a) { return Rational(-1) * a; }
    friend TorusForm operator*(const Rational& s, const TorusForm& a) {
        TorusForm out(a.dim_, a.degree_);
        for (const auto& [I, f] : a.terms_) out.add(I, s * f);
        return out;
    }
    friend TorusForm operator*(const TrigPoly& g, const TorusForm& a) {
        TorusForm out(a.dim_, a.degree_);
        for (const auto& [I, f] : a.terms_) out.add(I, g * f);
        return out;
    }
    friend bool operator==(const TorusForm& a, const TorusForm& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [I, f] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + f.to_json().dump() + ")";
            for (int i : I) out += " d" + axis_name(i, names);
        }
        return out;
    }

    static std::string axis_name(int i, const std::vector<std::string>& names) {
        if (static_cast<std::size_t>(i) < names.size()) return names[static_cast<std::size_t>(i)];
        return "x" + std::to_string(i + 1);
    }

    /// Sorts in place; returns the permutation sign, or 0 for a repeated index.
    static int sort_with_sign(Monomial& I) {
        int sign = 1;
        for (std::size_t i = 1; i < I.size(); ++i)
            for (std::size_t j = i; j > 0 && I[j - 1] >= I[j]; --j) {
                if (I[j - 1] == I[j]) return 0;
                std::swap(I[j - 1], I[j]);
                sign = -sign;
            }
        return sign;
    }

private:
    void check(const TorusForm& o) const {
        if (o.dim_ != dim_ || o.degree_ != degree_) throw std::invalid_argument("forms of different shape");
    }

    int dim_ = 1;
    int degree_ = 0;
    std::map<Monomial, TrigPoly> terms_;
};

/// A form times an exact scalar; used for normalized forms such as dx/(2pi).
struct ScaledForm {
    TorusForm form;
    ExactScalar scale{1};
};

/// Vector field sum_j X^j d/dx_j.
class TorusVectorField {
public:
    TorusVectorField() = default;
    explicit TorusVectorField(int dim) : comps_(static_cast<std::size_t>(dim), TrigPoly(dim)) {}
    explicit TorusVectorField(std::vector<TrigPoly> comps) : comps_(std::move(comps)) {
        for (const auto& c : comps_)
            if (c.dim() != dim()) throw std::invalid_argument("field components on different tori");
    }
    static TorusVectorField coordinate(int dim, int axis) {
        TorusVectorField X(dim);
        X[axis] = TrigPoly::constant(dim, 1);
        return X;
    }

    int dim() const { return static_cast<int>(comps_.size()); }
    TrigPoly& operator[](int j) { return comps_.at(static_cast<std::size_t>(j)); }
    const TrigPoly& operator[](int j) const { return comps_.at(static_cast<std::size_t>(j)); }
    const std::vector<TrigPoly>& components() const { return comps_; }

    bool is_zero() const {
        return std::all_of(comps_.begin(), comps_.end(), [](const TrigPoly& c) { return c.is_zero(); });
    }

    /// Directional derivative X(f).
    TrigPoly apply(const TrigPoly& f) const {
        TrigPoly out(f.dim());
        for (int j = 0; j < dim(); ++j)
            if (!comps_[static_cast<std::size_t>(j)].is_zero()) out += comps_[static_cast<std::size_t>(j)] * f.partial(j);
        return out;
    }

    TrigPoly divergence() const {
        TrigPoly out(dim());
        for (int j = 0; j < dim(); ++j) out += comps_[static_cast<std::size_t>(j)].partial(j);
        return out;
    }

    friend TorusVectorField operator+(const TorusVectorField& a, const TorusVectorField& b) {
        TorusVectorField out = a;
        for (int j = 0; j < a.dim(); ++j) out[j] += b[j];
        return out;
    }
    friend TorusVectorField operator-(const TorusVectorField& a, const TorusVectorField& b) {
        TorusVectorField out = a;
        for (int j = 0; j < a.dim(); ++j) out[j] -= b[j];
        return out;
    }
    friend TorusVectorField operator*(const TrigPoly& f, const TorusVectorField& a) {
        TorusVectorField out(a.dim());
        for (int j = 0; j < a.dim(); ++j) out[j] = f * a[j];
        return out;
    }
    friend TorusVectorField operator*(const Rational& s, const TorusVectorField& a) {
        TorusVectorField out(a.dim());
        for (int j = 0; j < a.dim(); ++j) out[j] = s * a[j];
        return out;
    }
    friend bool operator==(const TorusVectorField&, const TorusVectorField&) = default;

    nlohmann::json to_json() const {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& c : comps_) out.push_back(c.to_json());
        return out;
    }

private:
    std::vector<TrigPoly> comps_;
};

/// [X, Y]^j = X(Y^j) - Y(X^j)
inline TorusVectorField bracket(const TorusVectorField& X, const TorusVectorField& Y) {
    TorusVectorField out(X.dim());
    for (int j = 0; j < X.dim(); ++j) out[j] = X.apply(Y[j]) - Y.apply(X[j]);
    return out;
}

inline TorusForm exterior_derivative(const TorusForm& F) {
    if (F.degree() == F.dim()) throw std::invalid_argument("exterior derivative of a top-degree form");
    TorusForm out(F.dim(), F.degree() + 1);
    Monomial merged;
    for (const auto& [I, f] : F.terms())
        for (int j = 0; j < F.dim(); ++j) {
            TrigPoly fj = f.partial(j);
            if (fj.is_zero()) continue;
            int s = cealg::shuffle_sign({j}, I, merged);
            if (s != 0) out.add(merged, s > 0 ? fj : -fj);
        }
    return out;
}

inline TorusForm wedge(const TorusForm& a, const TorusForm& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge of forms on different tori");
    const int k = a.degree() + b.degree();
    if (k > a.dim()) throw std::invalid_argument("wedge exceeds top degree");
    TorusForm out(a.dim(), k);
    Monomial merged;
    for (const auto& [I, f] : a.terms())
        for (const auto& [J, g] : b.terms()) {
            int s = cealg::shuffle_sign(I, J, merged);
            if (s != 0) out.add(merged, s > 0 ? f * g : -(f * g));
        }
    return out;
}

/// Interior product i_X F, inserting X into the first slot.
inline TorusForm contract(const TorusVectorField& X, const TorusForm& F) {
    if (X.dim() != F.dim()) throw std::invalid_argument("contraction on different tori");
    if (F.degree() == 0) return TorusForm(F.dim(), 0);
    TorusForm out(F.dim(), F.degree() - 1);
    for (const auto& [I, f] : F.terms())
        for (std::size_t s = 0; s < I.size(); ++s) {
            const auto& Xi = X[I[s]];
            if (Xi.is_zero()) continue;
            Monomial rest = I;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
            out.add(rest, s % 2 == 0 ? Xi * f : -(Xi * f));
        }
    return out;
}

/// Evaluates a 2-form on a pair of fields: F(X, Y) = i_Y i_X F.
inline TrigPoly evaluate(const TorusForm& F, const TorusVectorField& X, const TorusVectorField& Y) {
    if (F.degree() != 2) throw std::invalid_argument("expected a 2-form");
    return contract(Y, contract(X, F)).coefficient({});
}

/// L_X F = i_X dF + d i_X F.
inline TorusForm lie_derivative(const TorusVectorField& X, const TorusForm& F) {
    if (F.degree() == F.dim()) return exterior_derivative(contract(X, F));  // dF = 0
    TorusForm out = contract(X, exterior_derivative(F));
    if (F.degree() > 0) out += exterior_derivative(contract(X, F));
    return out;
}

/// Constant Fourier modes of the coefficients: the de Rham class in the basis dx_I.
inline std::map<Monomial, Rational> class_coordinates(const TorusForm& F) {
    std::map<Monomial, Rational> out;
    for (const auto& [I, f] : F.terms()) {
        Rational c = f.mean();
        if (c != 0) out.emplace(I, c);
    }
    return out;
}

/// Coordinate subtorus: x_j = offsets_j * pi for j outside the axes, oriented
/// by the order of the axes times the orientation sign.
struct CoordinateCycle {
    Monomial axes;
    PiMultiples offsets;  ///< one entry per torus coordinate; entries on the axes are ignored
    int orientation = 1;

    int dim() const { return static_cast<int>(axes.size()); }

    static CoordinateCycle make(int torus_dim, Monomial axes, PiMultiples offsets = {}, int orientation = 1) {
        CoordinateCycle C{std::move(axes), std::move(offsets), orientation};
        if (C.offsets.empty()) C.offsets.assign(static_cast<std::size_t>(torus_dim), Rational(0));
        C.validate(torus_dim);
        return C;
    }

    void validate(int torus_dim) const {
        if (static_cast<int>(offsets.size()) != torus_dim) throw std::invalid_argument("cycle offsets have wrong length");
        if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation must be +-1");
        Monomial sorted = axes;
        if (TorusForm::sort_with_sign(sorted) == 0) throw std::invalid_argument("cycle axes repeat");
        for (int a : axes)
            if (a < 0 || a >= torus_dim) throw std::invalid_argument("cycle axis out of range");
        for (const auto& t : offsets)
            if (t < 0 || t >= 2) throw std::invalid_argument("cycle offset outside [0, 2pi)");
    }

    nlohmann::json to_json() const {
        nlohmann::json off = nlohmann::json::array();
        for (const auto& t : offsets) off.push_back(preqlat::to_string(t));
        return {{"axes", axes}, {"offsets_pi", off}, {"orientation", orientation}};
    }
};

inline ExactScalar integrate_over_cycle(const TorusForm& F, const CoordinateCycle& C) {
    C.validate(F.dim());
    if (F.degree() != C.dim()) throw std::invalid_argument("form degree does not match cycle dimension");
    Monomial sorted = C.axes;
    const int sign = TorusForm::sort_with_sign(sorted) * C.orientation;
    TrigPoly f = F.coefficient(sorted);
    for (int j = 0; j < F.dim(); ++j)
        if (std::find(sorted.begin(), sorted.end(), j) == sorted.end())
            f = f.restrict(j, C.offsets[static_cast<std::size_t>(j)]);
    return ExactScalar(sign * f.mean(), C.dim());
}

inline ExactScalar integrate_over_cycle(const ScaledForm& F, const CoordinateCycle& C) {
    return F.scale * integrate_over_cycle(F.form, C);
}

/// Integral of a top form over T^m with orientation dx_1 ^ ... ^ dx_m.
inline ExactScalar integrate(const TorusForm& F) {
    if (F.degree() != F.dim()) throw std::invalid_argument("integrand is not a top-degree form");
    Monomial all(static_cast<std::size_t>(F.dim()));
    for (int i = 0; i < F.dim(); ++i) all[static_cast<std::size_t>(i)] = i;
    return integrate_over_cycle(F, CoordinateCycle::make(F.dim(), all));
}

inline ExactScalar integrate(const ScaledForm& F) { return F.scale * integrate(F.form); }

}  // namespace preqlat::torus
