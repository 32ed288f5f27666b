#pragma once

#include "preqlat/forms.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

/// Divergence-free fields on (T^m, nu): exact fields, flux and Lichnerowicz cocycles.
namespace preqlat::torus {

/// nu = dx_1 ^ ... ^ dx_m / (2pi)^m, total volume 1.
inline ScaledForm unit_volume(int m) {
    Monomial all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    return {TorusForm::constant(m, all), ExactScalar(Rational(1), -m)};
}

/// The field is factor * field; the factor absorbs the normalization of nu.
struct ExactField {
    TorusVectorField field;
    ExactScalar factor{1};
};

inline Rational volume_density(const ScaledForm& nu) {
    const int m = nu.form.dim();
    if (nu.form.degree() != m) throw std::invalid_argument("volume form must have top degree");
    Monomial all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    const TrigPoly c = nu.form.coefficient(all);
    if (c.is_zero() || c.degree() != 0) throw std::invalid_argument("volume form must have a nonzero constant density");
    return c.mean();
}

/// X_alpha with i_{X_alpha} nu = d alpha, for an (m-2)-form alpha.
inline ExactField exact_field_from_potential(const TorusForm& alpha, const ScaledForm& nu) {
    const int m = nu.form.dim();
    if (alpha.dim() != m || alpha.degree() != m - 2) throw std::invalid_argument("potential must be an (m-2)-form");
    const Rational c = volume_density(nu);
    const TorusForm beta = exterior_derivative(alpha);
    // i_X (c dx_1..m) = c sum_j (-1)^j X^j dx_{[m]\j}
    TorusVectorField X(m);
    for (int j = 0; j < m; ++j) {
        Monomial rest;
        for (int i = 0; i < m; ++i)
            if (i != j) rest.push_back(i);
        X[j] = (j % 2 == 0 ? Rational(1) / c : Rational(-1) / c) * beta.coefficient(rest);
    }
    return {X, ExactScalar(Rational(1)) / nu.scale};
}

inline bool is_divergence_free(const TorusVectorField& X, const ScaledForm& nu) {
    volume_density(nu);
    return X.divergence().is_zero();
}

/// Coordinates of [i_X nu] in the basis dx_I of (m-1)-forms, lexicographic.
inline std::vector<ExactScalar> infinitesimal_flux(const TorusVectorField& X, const ScaledForm& nu) {
    if (!is_divergence_free(X, nu)) throw std::invalid_argument("field is not divergence free");
    const TorusForm iX = contract(X, nu.form);
    std::vector<ExactScalar> out;
    for (const auto& I : cealg::monomial_basis(nu.form.dim(), nu.form.dim() - 1))
        out.push_back(nu.scale * ExactScalar(iX.coefficient(I).mean()));
    return out;
}

inline std::vector<ExactScalar> infinitesimal_flux(const ExactField& X, const ScaledForm& nu) {
    auto out = infinitesimal_flux(X.field, nu);
    for (auto& v : out) v = X.factor * v;
    return out;
}

/// lambda_Q(X, Y) = int_Q i_Y i_X nu for a codimension-two cycle Q.
inline ExactScalar lichnerowicz_singular(const CoordinateCycle& Q, const TorusVectorField& X,
                                         const TorusVectorField& Y, const ScaledForm& nu) {
    if (Q.dim() != nu.form.dim() - 2) throw std::invalid_argument("cycle must have codimension two");
    return nu.scale * integrate_over_cycle(contract(Y, contract(X, nu.form)), Q);
}

inline ExactScalar lichnerowicz_singular(const CoordinateCycle& Q, const ExactField& X, const ExactField& Y,
                                         const ScaledForm& nu) {
    return X.factor * Y.factor * lichnerowicz_singular(Q, X.field, Y.field, nu);
}

/// lambda_eta(X, Y) = int_M eta ^ i_Y i_X nu for a closed 2-form eta.
inline ExactScalar lichnerowicz_eta(const ScaledForm& eta, const TorusVectorField& X, const TorusVectorField& Y,
                                    const ScaledForm& nu) {
    if (eta.form.degree() != 2) throw std::invalid_argument("eta must be a 2-form");
    if (eta.form.degree() < eta.form.dim() && !exterior_derivative(eta.form).is_zero())
        throw std::invalid_argument("eta is not closed");
    return eta.scale * nu.scale * integrate(wedge(eta.form, contract(Y, contract(X, nu.form))));
}

inline ExactScalar lichnerowicz_eta(const ScaledForm& eta, const ExactField& X, const ExactField& Y,
                                    const ScaledForm& nu) {
    return X.factor * Y.factor * lichnerowicz_eta(eta, X.field, Y.field, nu);
}

/// Closed 2-form eta with int_Q gamma = int_M eta ^ gamma for a coordinate
/// codimension-two cycle Q; eta = +-dx_a ^ dx_b / (2pi)^2.
inline ScaledForm poincare_dual_2form(const CoordinateCycle& Q, int torus_dim) {
    Q.validate(torus_dim);
    if (Q.dim() != torus_dim - 2) throw std::invalid_argument("cycle must have codimension two");
    Monomial missing;
    for (int i = 0; i < torus_dim; ++i)
        if (std::find(Q.axes.begin(), Q.axes.end(), i) == Q.axes.end()) missing.push_back(i);
    TorusForm dual = TorusForm::constant(torus_dim, missing);
    Monomial sorted = Q.axes;
    TorusForm::sort_with_sign(sorted);
    TorusForm gamma = TorusForm::constant(torus_dim, sorted);
    ExactScalar lhs = integrate_over_cycle(gamma, Q);
    ExactScalar rhs = ExactScalar(Rational(1), -2) * integrate(wedge(dual, gamma));
    return {lhs == rhs ? dual : -dual, ExactScalar(Rational(1), -2)};
}

}  // namespace preqlat::torus
