#pragma once

#include "preqlat/forms.hpp"

#include <array>
#include <stdexcept>

/// The contact 3-torus (T^3, theta = cos z dx + sin z dy), coordinates (x, y, z).
namespace preqlat::torus::contact {

inline constexpr int kDim = 3;
inline constexpr int X = 0, Y = 1, Z = 2;

class NotReebInvariant : public std::invalid_argument {
public:
    NotReebInvariant() : std::invalid_argument("not Reeb-invariant") {}
};

inline TrigPoly cos_z(const Rational& amp = 1) { return TrigPoly::cos_axis(kDim, Z, 1, amp); }
inline TrigPoly sin_z(const Rational& amp = 1) { return TrigPoly::sin_axis(kDim, Z, 1, amp); }

inline TorusForm theta() {
    return TorusForm::term(cos_z(), {X}) + TorusForm::term(sin_z(), {Y});
}
inline TorusForm dtheta() { return exterior_derivative(theta()); }

/// mu = (1/2) theta ^ d theta
inline TorusForm mu() { return Rational(1, 2) * wedge(theta(), dtheta()); }

/// E = cos z d_x + sin z d_y
inline TorusVectorField reeb_field() {
    TorusVectorField E(kDim);
    E[X] = cos_z();
    E[Y] = sin_z();
    return E;
}

/// V = -sin z d_x + cos z d_y, the other horizontal direction.
inline TorusVectorField transverse_field() {
    TorusVectorField V(kDim);
    V[X] = sin_z(-1);
    V[Y] = cos_z();
    return V;
}

inline bool invariant_function_check(const TrigPoly& f) {
    if (f.dim() != kDim) throw std::invalid_argument("function must live on T^3");
    return reeb_field().apply(f).is_zero();
}

/// zeta_f = f E - V(f) d_z + (d_z f) V, with i_zeta theta = f and i_zeta d theta = -df.
inline TorusVectorField contact_field(const TrigPoly& f) {
    if (!invariant_function_check(f)) throw NotReebInvariant();
    const TorusVectorField V = transverse_field();
    TorusVectorField zeta = f * reeb_field() + f.partial(Z) * V;
    zeta[Z] -= V.apply(f);
    return zeta;
}

/// {f, g} = d theta(zeta_f, zeta_g)
inline TrigPoly contact_bracket(const TrigPoly& f, const TrigPoly& g) {
    return evaluate(dtheta(), contact_field(f), contact_field(g));
}

/// sigma_Q(f, g) = int_Q g df
inline ExactScalar sigma(const CoordinateCycle& Q, const TrigPoly& f, const TrigPoly& g) {
    if (Q.dim() != 1) throw std::invalid_argument("Q must be a 1-cycle");
    return integrate_over_cycle(g * exterior_derivative(TorusForm::function(f)), Q);
}

/// rho_Q(h) = -int_Q h theta
inline ExactScalar rho(const CoordinateCycle& Q, const TrigPoly& h) {
    if (Q.dim() != 1) throw std::invalid_argument("Q must be a 1-cycle");
    return -integrate_over_cycle(h * theta(), Q);
}

/// (delta rho_Q)(f, g) = -rho_Q({f, g})
inline ExactScalar delta_rho(const CoordinateCycle& Q, const TrigPoly& f, const TrigPoly& g) {
    return -rho(Q, contact_bracket(f, g));
}

/// lambda^mu_Q(X, Y) = int_Q i_Y i_X mu
inline ExactScalar lichnerowicz_mu(const CoordinateCycle& Q, const TorusVectorField& A, const TorusVectorField& B) {
    if (Q.dim() != 1) throw std::invalid_argument("Q must be a 1-cycle");
    return integrate_over_cycle(contract(B, contract(A, mu())), Q);
}

/// lambda^mu_Q(zeta_f, zeta_g) - sigma_Q(f, g) - (1/2) delta rho_Q(f, g); identically zero.
inline ExactScalar trekterug_residual(const CoordinateCycle& Q, const TrigPoly& f, const TrigPoly& g) {
    return lichnerowicz_mu(Q, contact_field(f), contact_field(g)) - sigma(Q, f, g) -
           ExactScalar(Rational(1, 2)) * delta_rho(Q, f, g);
}

/// Class coordinates in the basis (dy^dz, dz^dx, dx^dy).
using H2Coordinates = std::array<Rational, 3>;

inline H2Coordinates h2_coordinates(const TorusForm& F) {
    if (F.degree() != 2 || F.dim() != kDim) throw std::invalid_argument("expected a 2-form on T^3");
    return {F.coefficient({Y, Z}).mean(), -F.coefficient({X, Z}).mean(), F.coefficient({X, Y}).mean()};
}

/// [f d theta] in H^2(T^3, R).
inline H2Coordinates flux_on_contact(const TrigPoly& f) {
    if (!invariant_function_check(f)) throw NotReebInvariant();
    return h2_coordinates(f * dtheta());
}

/// [i_X mu] in H^2(T^3, R).
inline H2Coordinates flux_of_field(const TorusVectorField& A) { return h2_coordinates(contract(A, mu())); }

/// L_X theta; zero iff X is a strict contact field.
inline TorusForm strict_contact_residual(const TorusVectorField& A) { return lie_derivative(A, theta()); }

}  // namespace preqlat::torus::contact
