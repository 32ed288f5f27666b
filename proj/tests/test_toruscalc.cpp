#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "preqlat/cocycles.hpp"
#include "preqlat/verify.hpp"

#include <numbers>

using namespace preqlat;
using namespace preqlat::torus;
using preqlat::verify::Rng;

namespace {

// Floating-point oracles are compared with this absolute tolerance.
constexpr double kTol = 1e-9;
// Finite differences carry O(h^2) error.
constexpr double kDiffTol = 1e-6;

const double kTwoPi = 2 * std::numbers::pi;

TrigPoly cosx(int dim, int n = 1) { return TrigPoly::cos_axis(dim, 0, n); }
TrigPoly sinx(int dim, int n = 1) { return TrigPoly::sin_axis(dim, 0, n); }
TrigPoly cosy(int dim) { return TrigPoly::cos_axis(dim, 1); }
TrigPoly siny(int dim) { return TrigPoly::sin_axis(dim, 1); }
TrigPoly one(int dim) { return TrigPoly::constant(dim, 1); }

std::vector<double> to_double(const PiMultiples& t) {
    std::vector<double> x;
    for (const auto& q : t) x.push_back(static_cast<double>(q) * std::numbers::pi);
    return x;
}

}  // namespace

TEST_CASE("trig polynomials agree with direct evaluation") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng(s);
        const int dim = rng.uniform(1, 4);
        auto f = verify::random_function(rng, dim);
        auto g = verify::random_function(rng, dim);
        CHECK(f.is_real());
        CHECK(static_cast<double>(f.mean()) == doctest::Approx(oracle::grid_mean(f, 8)).epsilon(kTol));
        CHECK(static_cast<double>((f * g).mean()) == doctest::Approx(oracle::grid_mean(f * g, 12)).epsilon(kTol));
        auto x = verify::random_point(rng, dim);
        CHECK(std::abs(static_cast<double>(f.evaluate_exact(x)) - oracle::eval_real(f, to_double(x))) < kTol);
        std::vector<double> p(static_cast<std::size_t>(dim), 0.37);
        CHECK(std::abs(f.evaluate(p) - oracle::eval_real(f, p)) < kTol);
        for (int j = 0; j < dim; ++j)
            CHECK(std::abs(oracle::eval_real(f.partial(j), p) - oracle::numeric_partial(f, p, j)) < kDiffTol);
        CHECK(TrigPoly::from_json(dim, f.to_json()) == f);
    }
}

TEST_CASE("trig polynomial basics") {
    CHECK(sinx(1).partial(0) == cosx(1));
    CHECK(cosx(1).partial(0) == -sinx(1));
    CHECK((cosx(1) * cosx(1)).mean() == Rational(1, 2));
    CHECK((sinx(2) * siny(2)).mean() == 0);
    CHECK(cosx(2).restrict(0, 1) == TrigPoly::constant(2, -1));
    CHECK(sinx(2).restrict(0, Rational(1, 2)) == one(2));
    CHECK(cosx(1).evaluate_exact({Rational(1)}) == -1);
    CHECK_THROWS_AS(cosx(1).evaluate_exact({Rational(1, 3)}), std::domain_error);
    CHECK_THROWS(TrigPoly(7));
    CHECK(TrigPoly::cos_axis(3, 2, 6).degree() == 6);
    CHECK(cosx(3).depends_on(0));
    CHECK_FALSE(cosx(3).depends_on(2));
}

TEST_CASE("exterior derivative, wedge and contraction") {
    const int dim = 3;
    auto dx = TorusForm::dx(dim, 0), dy = TorusForm::dx(dim, 1), dz = TorusForm::dx(dim, 2);
    auto cosz = TrigPoly::cos_axis(dim, 2), sinz = TrigPoly::sin_axis(dim, 2);
    CHECK(exterior_derivative(cosz * dx) == sinz * wedge(dx, dz));
    CHECK(wedge(dy, dx) == -wedge(dx, dy));
    CHECK(wedge(dx, dx).is_zero());
    CHECK(TorusForm::term(one(dim), {2, 0}) == -wedge(dx, dz));
    CHECK(contract(TorusVectorField::coordinate(dim, 1), wedge(dx, dy)) == -dx);
    CHECK_THROWS(exterior_derivative(wedge(dx, wedge(dy, dz))));
    CHECK_THROWS(wedge(wedge(dx, dy), wedge(dy, dz)));

    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng(100 + s);
        const int m = rng.uniform(2, 4);
        const int p = rng.uniform(0, m - 2);
        auto F = verify::random_form(rng, m, p);
        CHECK(exterior_derivative(exterior_derivative(F)).is_zero());
        auto X = verify::random_field(rng, m);
        CHECK(lie_derivative(X, F) == verify::lie_derivative_by_coordinates(X, F));
        auto G = verify::random_form(rng, m, 1);
        auto lhs = exterior_derivative(wedge(F, G));
        auto rhs = wedge(exterior_derivative(F), G) + Rational(p % 2 ? -1 : 1) * wedge(F, exterior_derivative(G));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("integration over the torus and coordinate cycles") {
    const int dim = 2;
    auto dxdy = TorusForm::constant(dim, {0, 1});
    CHECK(integrate((cosx(dim) * cosx(dim)) * dxdy) == ExactScalar(Rational(1, 2), 2));
    CHECK(integrate(dxdy) == ExactScalar(1, 2));
    CHECK(integrate(TorusForm::term(one(dim), {1, 0})) == ExactScalar(-1, 2));

    auto cycx = CoordinateCycle::make(dim, {0});
    auto cycx_pi = CoordinateCycle::make(dim, {0}, {0, 1});
    auto form = cosy(dim) * TorusForm::dx(dim, 0);
    CHECK(integrate_over_cycle(form, cycx) == ExactScalar(1, 1));
    CHECK(integrate_over_cycle(form, cycx_pi) == ExactScalar(-1, 1));
    CHECK(integrate_over_cycle(form, CoordinateCycle::make(dim, {0}, {0, 1}, -1)) == ExactScalar(1, 1));
    CHECK_THROWS(CoordinateCycle::make(dim, {0}, {0, 2}));
    CHECK_THROWS(CoordinateCycle::make(dim, {0, 0}));

    for (std::uint64_t s = 0; s < 30; ++s) {
        Rng rng(200 + s);
        auto f = verify::random_function(rng, 3);
        auto C = verify::random_cycle(rng, 3, 1);
        auto F = f * TorusForm::dx(3, C.axes[0]);
        const double expect = C.orientation * oracle::line_integral(f, to_double(C.offsets), C.axes[0]);
        CHECK(std::abs(integrate_over_cycle(F, C).to_double() - expect) < kTol);
    }
}

TEST_CASE("hamiltonian fields and poisson brackets") {
    auto w = ConstantSymplectic::standard(1);
    auto Xsy = w.hamiltonian_field(siny(2));
    CHECK(Xsy[0] == -cosy(2));
    CHECK(Xsy[1].is_zero());
    auto Xsx = w.hamiltonian_field(sinx(2));
    CHECK(Xsx[0].is_zero());
    CHECK(Xsx[1] == cosx(2));
    CHECK(w.poisson_bracket(sinx(2), siny(2)) == cosx(2) * cosy(2));
    CHECK(ks_cocycle(sinx(2), siny(2), w, {0, 0}) == 1);
    CHECK(w.volume() == ExactScalar(1, 2));
    CHECK(ConstantSymplectic::standard(2, 3).volume() == ExactScalar(9, 4));

    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng(300 + s);
        auto W = ConstantSymplectic::standard(rng.uniform(1, 2), rng.uniform(1, 3));
        const int m = W.dim();
        auto f = verify::random_function(rng, m), g = verify::random_function(rng, m), h = verify::random_function(rng, m);
        // i_{X_f} omega = -df
        CHECK(contract(W.hamiltonian_field(f), W.form()) == -exterior_derivative(TorusForm::function(f)));
        CHECK(jacobi_residual(W, f, g, h).is_zero());
        CHECK(W.poisson_bracket(f, g) == -W.poisson_bracket(g, f));
        CHECK(W.poisson_bracket(f, g * h) == W.poisson_bracket(f, g) * h + g * W.poisson_bracket(f, h));
    }
    CHECK_THROWS(ConstantSymplectic::from_form(TorusForm::constant(4, {0, 1})));
}

TEST_CASE("roger and singular cocycles") {
    auto w = ConstantSymplectic::standard(1);
    auto dx = TorusForm::dx(2, 0);
    CHECK(roger_cocycle(dx, cosy(2), siny(2), w) == ExactScalar(Rational(-1, 2), 2));
    auto C = CoordinateCycle::make(2, {0});
    CHECK(singular_cocycle(C, sinx(2), cosx(2), w) == ExactScalar(Rational(1, 2), 1));
    CHECK_THROWS(roger_cocycle(cosy(2) * dx, sinx(2), siny(2), w));

    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng(400 + s);
        auto f = verify::random_function(rng, 2), g = verify::random_function(rng, 2);
        // standard T^2: X_g = (-d_y g, d_x g), so psi_dx(f, g) = -int f d_y g
        TrigPoly integrand = -(f * g.partial(1));
        const double expect = oracle::grid_mean(integrand, 16) * kTwoPi * kTwoPi;
        CHECK(std::abs(roger_cocycle(dx, f, g, w).to_double() - expect) < kTol);
        // the two cocycles agree on Poisson-commuting pairs
        auto cyc = verify::random_cycle(rng, 2, 1);
        auto alpha = poincare_dual_1form(cyc, 2);
        const int axis = rng.uniform(0, 1);
        auto u = verify::random_poly(rng, 2, {axis}, 3, 3), v = verify::random_poly(rng, 2, {axis}, 3, 3);
        CHECK(singular_cocycle(cyc, u, v, w) == roger_cocycle(alpha, u, v, w));
        CHECK(rho(f, w) == f.mean());
        CHECK(kappa(f, w).mean() == 0);
    }

    auto cyc = CoordinateCycle::make(2, {0});
    CHECK_FALSE(singular_cocycle(cyc, sinx(2), cosx(2) * cosy(2), w) ==
                roger_cocycle(poincare_dual_1form(cyc, 2), sinx(2), cosx(2) * cosy(2), w));

    CocycleParams p;
    p.omega = w;
    p.alpha = ScaledForm{dx};
    auto f = sinx(2), g = siny(2) * cosx(2), h = cosy(2) + sinx(2, 2);
    CHECK(cocycle_residual(CocycleKind::roger, p, f, g, h).is_zero());
    // a non-closed alpha breaks the cocycle identity
    CocycleParams bad = p;
    bad.alpha = ScaledForm{cosy(2) * dx};
    CHECK_THROWS(cocycle_residual(CocycleKind::roger, bad, f, g, h));
}

TEST_CASE("volume preserving fields") {
    auto nu = unit_volume(3);
    CHECK(integrate(nu) == ExactScalar(1));
    auto pot = TorusForm::term(TrigPoly::sin_axis(3, 2, 1, -1), {1});
    auto X = exact_field_from_potential(pot, nu);
    CHECK(X.field[0] == TrigPoly::cos_axis(3, 2));
    CHECK(X.field[1].is_zero());
    CHECK(X.field[2].is_zero());
    CHECK(X.factor == ExactScalar(1, 3));
    // i_X nu = d alpha
    CHECK(X.factor * nu.scale == ExactScalar(1));
    CHECK(contract(X.field, nu.form) == exterior_derivative(pot));

    auto flux = infinitesimal_flux(TorusVectorField::coordinate(3, 0), nu);
    CHECK(flux == std::vector<ExactScalar>{ExactScalar(0), ExactScalar(0), ExactScalar(1, -3)});
    for (const auto& v : infinitesimal_flux(X, nu)) CHECK(v.is_zero());
    CHECK_THROWS(infinitesimal_flux(TorusVectorField({cosx(3), one(3), one(3)}), nu));

    auto Q = CoordinateCycle::make(3, {2});
    auto ex = TorusVectorField::coordinate(3, 0), ey = TorusVectorField::coordinate(3, 1);
    CHECK(lichnerowicz_singular(Q, ex, ey, nu) == ExactScalar(1, -2));
    CHECK(lichnerowicz_eta(poincare_dual_2form(Q, 3), ex, ey, nu) == ExactScalar(1, -2));

    for (std::uint64_t s = 0; s < 30; ++s) {
        Rng rng(500 + s);
        auto A = verify::random_divergence_free(rng, 3, nu), B = verify::random_divergence_free(rng, 3, nu);
        CHECK(is_divergence_free(A, nu));
        CHECK(is_divergence_free(bracket(A, B), nu));
        CocycleParams p;
        p.nu = nu;
        p.cycle = verify::random_cycle(rng, 3, 1);
        p.eta = poincare_dual_2form(p.cycle, 3);
        auto C = verify::random_divergence_free(rng, 3, nu);
        CHECK(cocycle_residual(CocycleKind::lichnerowicz_Q, p, A, B, C).is_zero());
        CHECK(cocycle_residual(CocycleKind::lichnerowicz_eta, p, A, B, C).is_zero());

        // the two cocycles agree on commuting exact fields depending on one coordinate
        const int c = rng.uniform(0, 2), a = (c + 1) % 3, b = (c + 2) % 3;
        auto potential = [&] {
            return TorusForm::term(verify::random_poly(rng, 3, {c}, 3, 2), {a}) +
                   TorusForm::term(verify::random_poly(rng, 3, {c}, 3, 2), {b});
        };
        auto U = exact_field_from_potential(potential(), nu), V = exact_field_from_potential(potential(), nu);
        CHECK(bracket(U.field, V.field).is_zero());
        CHECK(lichnerowicz_singular(p.cycle, U, V, nu) == lichnerowicz_eta(p.eta, U, V, nu));
    }
}

TEST_CASE("contact torus") {
    using namespace contact;
    auto th = theta();
    auto dx = TorusForm::dx(3, X), dy = TorusForm::dx(3, Y), dz = TorusForm::dx(3, Z);
    CHECK(th == cos_z() * dx + sin_z() * dy);
    CHECK(mu() == Rational(-1, 2) * wedge(dx, wedge(dy, dz)));
    auto E = reeb_field();
    CHECK(contract(E, th) == TorusForm::function(one(3)));
    CHECK(contract(E, dtheta()).is_zero());
    CHECK(contract(transverse_field(), th).is_zero());
    CHECK(lie_derivative(TorusVectorField::coordinate(3, Z), th) == sin_z(-1) * dx + cos_z() * dy);
    CHECK(strict_contact_residual(E).is_zero());
    CHECK_FALSE(strict_contact_residual(TorusVectorField::coordinate(3, Z)).is_zero());

    CHECK_THROWS_AS(contact_field(sinx(3)), NotReebInvariant);
    CHECK(invariant_function_check(cos_z()));
    CHECK_FALSE(invariant_function_check(cosx(3)));

    auto fl = flux_on_contact(cos_z());
    CHECK(fl == H2Coordinates{Rational(-1, 2), 0, 0});
    CHECK(flux_of_field(contact_field(cos_z())) == fl);

    auto Qx = CoordinateCycle::make(3, {X});
    CHECK(rho(Qx, one(3)) == ExactScalar(-1, 1));
    CHECK(sigma(CoordinateCycle::make(3, {Z}), sin_z(), cos_z()) == ExactScalar(Rational(1, 2), 1));

    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng(600 + s);
        auto f = verify::random_invariant(rng), g = verify::random_invariant(rng);
        auto zeta = contact_field(f);
        CHECK(contract(zeta, th) == TorusForm::function(f));
        CHECK(contract(zeta, dtheta()) == -exterior_derivative(TorusForm::function(f)));
        CHECK(lie_derivative(zeta, th).is_zero());
        CHECK(contact_bracket(f, g) == -contact_bracket(g, f));
        CHECK(invariant_function_check(contact_bracket(f, g)));
        for (int axis : {X, Y, Z}) {
            auto Q = verify::random_cycle(rng, 3, 1);
            Q.axes = {axis};
            Q.offsets[static_cast<std::size_t>(axis)] = 0;
            CHECK(trekterug_residual(Q, f, g).is_zero());
        }
        auto h = verify::random_invariant(rng);
        CocycleParams p;
        p.cycle = CoordinateCycle::make(3, {Z});
        CHECK(cocycle_residual(CocycleKind::sigma_Q, p, f, g, h).is_zero());
    }
}

TEST_CASE("cocycle kinds") {
    for (auto k : kAllCocycleKinds) CHECK(parse_cocycle_kind(to_string(k)) == k);
    CHECK(to_string(CocycleKind::ks) == "KS");
    CHECK_THROWS_AS(parse_cocycle_kind("nope"), InputError);
    CHECK(acts_on_fields(CocycleKind::lichnerowicz_eta));
    CHECK_FALSE(acts_on_fields(CocycleKind::roger));

    // a pairing that is not a cocycle must leave a nonzero residual
    auto w = ConstantSymplectic::standard(1);
    auto br = [&](const TrigPoly& a, const TrigPoly& b) { return w.poisson_bracket(a, b); };
    auto not_cocycle = [](const TrigPoly& a, const TrigPoly& b) { return ExactScalar((a * b * b).mean()); };
    CHECK_FALSE(ce_residual(sinx(2), siny(2), cosx(2) + cosy(2), br, not_cocycle).is_zero());
}
