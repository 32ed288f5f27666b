#pragma once

#include "preqlat/cocycles.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

/// Seeded randomized checks of the torus identities.
namespace preqlat::verify {

using namespace preqlat::torus;
using nlohmann::json;

/// Deterministic generator; only the raw mt19937_64 stream is used, so results
/// do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    int uniform(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(eng_() % span);
    }
    bool coin() { return uniform(0, 1) == 1; }
    int sign() { return coin() ? 1 : -1; }
    Rational small_rational(int bound = 3) { return Rational(uniform(-bound, bound), uniform(1, 2)); }
    /// Multiple of 1/2 in [0, 2): offsets at which evaluation is exact.
    Rational half_turn() { return Rational(uniform(0, 3), 2); }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t trial_seed(std::uint64_t seed, const std::string& family, std::uint64_t trial) {
    return splitmix64(seed ^ splitmix64(fnv1a(family) ^ splitmix64(trial)));
}

// ---------------------------------------------------------------- generators

inline TrigPoly random_poly(Rng& rng, int dim, const std::vector<int>& axes, int max_mode, int max_terms,
                            bool with_constant = true) {
    TrigPoly p(dim);
    const int terms = rng.uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Mode k{};
        for (int a : axes) k[static_cast<std::size_t>(a)] = rng.uniform(-max_mode, max_mode);
        p += TrigPoly::wave(dim, k, rng.small_rational(), rng.small_rational());
    }
    if (with_constant && rng.coin()) p += TrigPoly::constant(dim, rng.uniform(-2, 2));
    return p;
}

inline std::vector<int> all_axes(int dim) {
    std::vector<int> a(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) a[static_cast<std::size_t>(i)] = i;
    return a;
}

inline TrigPoly random_function(Rng& rng, int dim, int max_mode = 2, int max_terms = 3) {
    return random_poly(rng, dim, all_axes(dim), max_mode, max_terms);
}

/// Reeb-invariant function on the contact T^3: a trig polynomial in z.
inline TrigPoly random_invariant(Rng& rng, int max_mode = 6, int max_terms = 4) {
    return random_poly(rng, 3, {contact::Z}, max_mode, max_terms);
}

inline TorusForm random_form(Rng& rng, int dim, int degree, int max_mode = 2) {
    TorusForm F(dim, degree);
    auto basis = cealg::monomial_basis(dim, degree);
    const int terms = rng.uniform(1, std::min<int>(3, static_cast<int>(basis.size())));
    for (int t = 0; t < terms; ++t) {
        const auto& I = basis[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(basis.size()) - 1))];
        F.add(I, random_poly(rng, dim, all_axes(dim), max_mode, 2));
    }
    return F;
}

/// Constant closed form plus an exact part.
inline TorusForm random_closed_form(Rng& rng, int dim, int degree) {
    TorusForm F(dim, degree);
    for (const auto& I : cealg::monomial_basis(dim, degree))
        if (rng.coin()) F.add(I, TrigPoly::constant(dim, rng.small_rational()));
    if (degree > 0) F += exterior_derivative(random_form(rng, dim, degree - 1, 2));
    return F;
}

inline TorusVectorField random_field(Rng& rng, int dim, int max_mode = 2) {
    TorusVectorField X(dim);
    for (int j = 0; j < dim; ++j)
        if (rng.coin()) X[j] = random_poly(rng, dim, all_axes(dim), max_mode, 2);
    return X;
}

/// Exact field from a random potential plus a constant field: divergence free.
inline TorusVectorField random_divergence_free(Rng& rng, int dim, const ScaledForm& nu) {
    TorusVectorField X = exact_field_from_potential(random_form(rng, dim, dim - 2, 2), nu).field;
    for (int j = 0; j < dim; ++j)
        if (rng.coin()) X[j] += TrigPoly::constant(dim, rng.small_rational());
    return X;
}

inline CoordinateCycle random_cycle(Rng& rng, int torus_dim, int cycle_dim) {
    std::vector<int> axes = all_axes(torus_dim);
    for (int i = torus_dim - 1; i > 0; --i) std::swap(axes[static_cast<std::size_t>(i)], axes[static_cast<std::size_t>(rng.uniform(0, i))]);
    axes.resize(static_cast<std::size_t>(cycle_dim));
    PiMultiples offsets;
    for (int j = 0; j < torus_dim; ++j) offsets.push_back(rng.half_turn());
    for (int a : axes) offsets[static_cast<std::size_t>(a)] = 0;
    return CoordinateCycle::make(torus_dim, axes, offsets, rng.sign());
}

inline PiMultiples random_point(Rng& rng, int dim) {
    PiMultiples x;
    for (int j = 0; j < dim; ++j) x.push_back(rng.half_turn());
    return x;
}

/// L_X (f dx_I) = X(f) dx_I + f sum_s dx_{i1} ^ .. ^ d(X^{i_s}) ^ .. ^ dx_{ik}, computed without Cartan's formula.
inline TorusForm lie_derivative_by_coordinates(const TorusVectorField& X, const TorusForm& F) {
    TorusForm out(F.dim(), F.degree());
    for (const auto& [I, f] : F.terms()) {
        out.add(I, X.apply(f));
        for (std::size_t s = 0; s < I.size(); ++s)
            for (int j = 0; j < F.dim(); ++j) {
                TrigPoly dX = X[I[s]].partial(j);
                if (dX.is_zero()) continue;
                Monomial J = I;
                J[s] = j;
                out += TorusForm::term(f * dX, J);
            }
    }
    return out;
}

// ---------------------------------------------------------------- families

struct Outcome {
    bool ok = true;
    json witness;
};

struct Family {
    std::string suite;
    std::string name;
    int default_trials = 100;
    bool randomized = true;
    std::function<Outcome(Rng&)> trial;
};

inline json scalar_json(const ExactScalar& s) { return exact_to_json(s); }

inline json poly_json(const TrigPoly& f) { return {{"dim", f.dim()}, {"modes", f.to_json()}}; }

inline json form_json(const TorusForm& F) {
    json terms = json::array();
    for (const auto& [I, f] : F.terms()) terms.push_back({{"dx", I}, {"coeff", f.to_json()}});
    return {{"dim", F.dim()}, {"degree", F.degree()}, {"terms", terms}};
}

inline json scaled_json(const ScaledForm& F) {
    json j = form_json(F.form);
    j["scale"] = exact_to_json(F.scale);
    return j;
}

inline ConstantSymplectic random_symplectic(Rng& rng) {
    return ConstantSymplectic::standard(rng.uniform(1, 2), rng.uniform(1, 2));
}

inline json omega_json(const ConstantSymplectic& w) { return form_json(w.form()); }

inline std::vector<Family> calculus_families() {
    std::vector<Family> out;
    out.push_back({"calculus", "calculus.d_squared", 100, true, [](Rng& rng) {
                       const int m = rng.uniform(2, 4);
                       const int k = rng.uniform(0, m - 2);
                       TorusForm F = random_form(rng, m, k);
                       TorusForm dd = exterior_derivative(exterior_derivative(F));
                       return Outcome{dd.is_zero(), {{"F", form_json(F)}}};
                   }});
    out.push_back({"calculus", "calculus.cartan", 100, true, [](Rng& rng) {
                       const int m = rng.uniform(2, 4);
                       TorusForm F = random_form(rng, m, rng.uniform(0, m));
                       TorusVectorField X = random_field(rng, m);
                       bool ok = lie_derivative(X, F) == lie_derivative_by_coordinates(X, F);
                       return Outcome{ok, {{"F", form_json(F)}, {"X", X.to_json()}}};
                   }});
    out.push_back({"calculus", "calculus.leibniz", 100, true, [](Rng& rng) {
                       const int m = rng.uniform(2, 4);
                       const int k = rng.uniform(0, m);
                       const int l = rng.uniform(0, m - k);
                       TorusForm F = random_form(rng, m, k), G = random_form(rng, m, l);
                       TorusVectorField X = random_field(rng, m);
                       bool ok = lie_derivative(X, wedge(F, G)) ==
                                 wedge(lie_derivative(X, F), G) + wedge(F, lie_derivative(X, G));
                       return Outcome{ok, {{"F", form_json(F)}, {"G", form_json(G)}, {"X", X.to_json()}}};
                   }});
    return out;
}

inline std::vector<Family> jacobi_families() {
    return {{"jacobi", "jacobi.poisson", 100, true, [](Rng& rng) {
                 auto w = random_symplectic(rng);
                 TrigPoly f = random_function(rng, w.dim()), g = random_function(rng, w.dim()),
                          h = random_function(rng, w.dim());
                 bool ok = jacobi_residual(w, f, g, h).is_zero() &&
                           (w.poisson_bracket(f, g) + w.poisson_bracket(g, f)).is_zero();
                 return Outcome{ok, {{"omega", omega_json(w)}, {"f", poly_json(f)}, {"g", poly_json(g)}, {"h", poly_json(h)}}};
             }}};
}

inline std::vector<Family> cocycle_families() {
    std::vector<Family> out;
    for (auto kind : kAllCocycleKinds) {
        out.push_back({"cocycles", "cocycles." + torus::to_string(kind), 100, true, [kind](Rng& rng) {
                           CocycleParams p;
                           json w;
                           w["kind"] = torus::to_string(kind);
                           ExactScalar r;
                           if (acts_on_fields(kind)) {
                               const int m = rng.uniform(3, 4);
                               p.nu = unit_volume(m);
                               p.cycle = random_cycle(rng, m, m - 2);
                               p.eta = ScaledForm{random_closed_form(rng, m, 2), ExactScalar(Rational(1), -2)};
                               TorusVectorField X = random_divergence_free(rng, m, p.nu),
                                                Y = random_divergence_free(rng, m, p.nu),
                                                Z = random_divergence_free(rng, m, p.nu);
                               r = cocycle_residual(kind, p, X, Y, Z);
                               w["inputs"] = {{"X", X.to_json()}, {"Y", Y.to_json()}, {"Z", Z.to_json()}};
                               w["nu"] = scaled_json(p.nu);
                               if (kind == CocycleKind::lichnerowicz_Q) w["Q"] = p.cycle.to_json();
                               else w["eta"] = scaled_json(p.eta);
                           } else if (kind == CocycleKind::sigma_Q) {
                               p.cycle = random_cycle(rng, 3, 1);
                               TrigPoly f = random_invariant(rng, 3), g = random_invariant(rng, 3),
                                        h = random_invariant(rng, 3);
                               r = cocycle_residual(kind, p, f, g, h);
                               w["Q"] = p.cycle.to_json();
                               w["inputs"] = {{"f", poly_json(f)}, {"g", poly_json(g)}, {"h", poly_json(h)}};
                           } else {
                               p.omega = random_symplectic(rng);
                               const int m = p.omega->dim();
                               p.alpha = ScaledForm{random_closed_form(rng, m, 1)};
                               p.cycle = random_cycle(rng, m, m - 1);
                               p.x0 = random_point(rng, m);
                               TrigPoly f = random_function(rng, m), g = random_function(rng, m),
                                        h = random_function(rng, m);
                               r = cocycle_residual(kind, p, f, g, h);
                               w["omega"] = omega_json(*p.omega);
                               if (kind == CocycleKind::roger) w["alpha"] = scaled_json(p.alpha);
                               if (kind == CocycleKind::singular) w["C"] = p.cycle.to_json();
                               if (kind == CocycleKind::ks) {
                                   json x = json::array();
                                   for (const auto& t : p.x0) x.push_back(preqlat::to_string(t));
                                   w["x0_pi"] = x;
                               }
                               w["inputs"] = {{"f", poly_json(f)}, {"g", poly_json(g)}, {"h", poly_json(h)}};
                           }
                           w["residual"] = scalar_json(r);
                           return Outcome{r.is_zero(), w};
                       }});
    }
    return out;
}

inline std::vector<Family> trekterug_families() {
    return {{"trekterug", "trekterug.all_circles", 200, true, [](Rng& rng) {
                 TrigPoly f = random_invariant(rng), g = random_invariant(rng);
                 json w = {{"f", poly_json(f)}, {"g", poly_json(g)}, {"residuals", json::array()}};
                 bool ok = true;
                 for (int axis = 0; axis < 3; ++axis) {
                     PiMultiples off = random_point(rng, 3);
                     off[static_cast<std::size_t>(axis)] = 0;
                     auto Q = CoordinateCycle::make(3, {axis}, off, 1);
                     ExactScalar r = contact::trekterug_residual(Q, f, g);
                     ok = ok && r.is_zero();
                     w["residuals"].push_back({{"Q", Q.to_json()}, {"residual", scalar_json(r)}});
                 }
                 return Outcome{ok, w};
             }}};
}

inline json h2_json(const contact::H2Coordinates& c) {
    return json::array({preqlat::to_string(c[0]), preqlat::to_string(c[1]), preqlat::to_string(c[2])});
}

inline std::vector<Family> contact_families() {
    std::vector<Family> out;
    out.push_back({"contact", "contact.flux_image", 1, false, [](Rng&) {
                       std::vector<TrigPoly> fs{TrigPoly::constant(3, 1)};
                       for (int k = 1; k <= 6; ++k) {
                           fs.push_back(TrigPoly::cos_axis(3, contact::Z, k));
                           fs.push_back(TrigPoly::sin_axis(3, contact::Z, k));
                       }
                       RatMatrix M(fs.size(), 3);
                       json rows = json::array();
                       bool dxdy_zero = true;
                       for (std::size_t i = 0; i < fs.size(); ++i) {
                           auto c = contact::flux_on_contact(fs[i]);
                           for (std::size_t j = 0; j < 3; ++j) M(i, j) = c[j];
                           dxdy_zero = dxdy_zero && c[2] == 0;
                           rows.push_back(h2_json(c));
                       }
                       const std::size_t rank = rational_rank(M);
                       // span is exactly {dy^dz, dz^dx}
                       RatMatrix with_axes(fs.size() + 2, 3);
                       for (std::size_t i = 0; i < fs.size(); ++i)
                           for (std::size_t j = 0; j < 3; ++j) with_axes(i, j) = M(i, j);
                       with_axes(fs.size(), 0) = 1;
                       with_axes(fs.size() + 1, 1) = 1;
                       bool ok = rank == 2 && dxdy_zero && rational_rank(with_axes) == 2;
                       return Outcome{ok, {{"rank", rank}, {"coordinates", rows}}};
                   }});
    out.push_back({"contact", "contact.strict_fields", 1, false, [](Rng&) {
                       using contact::strict_contact_residual;
                       TorusForm rz = strict_contact_residual(TorusVectorField::coordinate(3, contact::Z));
                       TorusForm expect = TorusForm::term(TrigPoly::sin_axis(3, contact::Z, 1, -1), {contact::X}) +
                                          TorusForm::term(TrigPoly::cos_axis(3, contact::Z), {contact::Y});
                       bool ok = !rz.is_zero() && rz == expect &&
                                 strict_contact_residual(TorusVectorField::coordinate(3, contact::X)).is_zero() &&
                                 strict_contact_residual(TorusVectorField::coordinate(3, contact::Y)).is_zero();
                       return Outcome{ok, {{"L_dz_theta", form_json(rz)}}};
                   }});
    out.push_back({"contact", "contact.mu_class", 50, true, [](Rng& rng) {
                       TrigPoly f = random_invariant(rng);
                       TorusVectorField zeta = contact::contact_field(f);
                       auto a = contact::flux_of_field(zeta);
                       auto b = contact::flux_on_contact(f);
                       TorusForm df = exterior_derivative(TorusForm::function(f));
                       bool ok = a == b && b[2] == 0 && contact::strict_contact_residual(zeta).is_zero() &&
                                 contract(zeta, contact::theta()).coefficient({}) == f &&
                                 contract(zeta, contact::dtheta()) == -df;
                       return Outcome{ok, {{"f", poly_json(f)}, {"i_zeta_mu", h2_json(a)}, {"f_dtheta", h2_json(b)}}};
                   }});
    out.push_back({"contact", "contact.bracket", 50, true, [](Rng& rng) {
                       TrigPoly f = random_invariant(rng), g = random_invariant(rng);
                       TrigPoly br = contact::contact_bracket(f, g);
                       TrigPoly lie = contact::contact_field(f).apply(g);
                       bool ok = br == lie && br.is_zero() &&
                                 contact::flux_on_contact(br) == contact::H2Coordinates{0, 0, 0};
                       return Outcome{ok, {{"f", poly_json(f)}, {"g", poly_json(g)}, {"bracket", poly_json(br)}}};
                   }});
    return out;
}

inline std::vector<Family> kappa_families() {
    return {{"kappa", "kappa.constant_shift", 100, true, [](Rng& rng) {
                 auto w = random_symplectic(rng);
                 const int m = w.dim();
                 TrigPoly f = random_function(rng, m), g = random_function(rng, m);
                 Rational c1 = rng.small_rational(5), c2 = rng.small_rational(5);
                 TrigPoly f2 = f + TrigPoly::constant(m, c1), g2 = g + TrigPoly::constant(m, c2);
                 ScaledForm alpha{random_closed_form(rng, m, 1)};
                 CoordinateCycle C = random_cycle(rng, m, m - 1);
                 ExactScalar ra = kappa_pullback_roger(alpha, f, g, w), ra2 = kappa_pullback_roger(alpha, f2, g2, w);
                 ExactScalar rc = kappa_pullback_singular(C, f, g, w), rc2 = kappa_pullback_singular(C, f2, g2, w);
                 bool ok = ra == ra2 && rc == rc2 && rho(f2, w) == rho(f, w) + c1 && rho(kappa(f, w), w) == 0;
                 return Outcome{ok,
                                {{"omega", omega_json(w)}, {"f", poly_json(f)}, {"g", poly_json(g)},
                                 {"c1", preqlat::to_string(c1)}, {"c2", preqlat::to_string(c2)},
                                 {"alpha", scaled_json(alpha)}, {"C", C.to_json()},
                                 {"roger", {scalar_json(ra), scalar_json(ra2)}},
                                 {"singular", {scalar_json(rc), scalar_json(rc2)}}}};
             }}};
}

inline std::vector<Family> duality_families() {
    std::vector<Family> out;
    out.push_back({"duality", "duality.roger_singular", 50, true, [](Rng& rng) {
                       auto w = random_symplectic(rng);
                       const int m = w.dim();
                       std::vector<int> iso;  // one of x_i, y_i for each i: Poisson-commuting coordinates
                       for (int i = 0; i < w.n(); ++i) iso.push_back(2 * i + rng.uniform(0, 1));
                       TrigPoly f = random_poly(rng, m, iso, 3, 3), g = random_poly(rng, m, iso, 3, 3);
                       CoordinateCycle C = random_cycle(rng, m, m - 1);
                       ScaledForm alpha = poincare_dual_1form(C, m);
                       ExactScalar sc = singular_cocycle(C, f, g, w), ra = roger_cocycle(alpha, f, g, w);
                       bool ok = w.poisson_bracket(f, g).is_zero() && sc == ra;
                       return Outcome{ok,
                                      {{"omega", omega_json(w)}, {"f", poly_json(f)}, {"g", poly_json(g)},
                                       {"C", C.to_json()}, {"alpha", scaled_json(alpha)},
                                       {"psi_C", scalar_json(sc)}, {"psi_alpha", scalar_json(ra)}}};
                   }});
    out.push_back({"duality", "duality.lichnerowicz", 50, true, [](Rng& rng) {
                       const int m = 3;
                       ScaledForm nu = unit_volume(m);
                       // potentials A(x_c) dx_a + B(x_c) dx_b give commuting exact fields
                       const int c = rng.uniform(0, 2);
                       std::vector<int> ab;
                       for (int i = 0; i < m; ++i)
                           if (i != c) ab.push_back(i);
                       auto potential = [&] {
                           return TorusForm::term(random_poly(rng, m, {c}, 3, 2), {ab[0]}) +
                                  TorusForm::term(random_poly(rng, m, {c}, 3, 2), {ab[1]});
                       };
                       ExactField X = exact_field_from_potential(potential(), nu);
                       ExactField Y = exact_field_from_potential(potential(), nu);
                       CoordinateCycle Q = random_cycle(rng, m, 1);
                       ScaledForm eta = poincare_dual_2form(Q, m);
                       ExactScalar lq = lichnerowicz_singular(Q, X, Y, nu), le = lichnerowicz_eta(eta, X, Y, nu);
                       bool ok = bracket(X.field, Y.field).is_zero() && lq == le;
                       return Outcome{ok,
                                      {{"X", X.field.to_json()}, {"Y", Y.field.to_json()},
                                       {"factor", scalar_json(X.factor)}, {"Q", Q.to_json()},
                                       {"eta", scaled_json(eta)}, {"lambda_Q", scalar_json(lq)},
                                       {"lambda_eta", scalar_json(le)}}};
                   }});
    return out;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"calculus", "jacobi",   "cocycles", "trekterug",
                                                "contact",  "kappa",    "duality"};
    return names;
}

inline std::vector<Family> families_for(const std::string& suite) {
    std::vector<Family> out;
    auto append = [&out](std::vector<Family> v) { out.insert(out.end(), v.begin(), v.end()); };
    const bool all = suite == "all";
    if (all || suite == "calculus") append(calculus_families());
    if (all || suite == "jacobi") append(jacobi_families());
    if (all || suite == "cocycles") append(cocycle_families());
    if (all || suite == "trekterug") append(trekterug_families());
    if (all || suite == "contact") append(contact_families());
    if (all || suite == "kappa") append(kappa_families());
    if (all || suite == "duality") append(duality_families());
    if (out.empty()) throw InputError("unknown suite '" + suite + "'");
    return out;
}

// ---------------------------------------------------------------- runner

struct FamilyResult {
    std::string suite;
    std::string name;
    int trials = 0;
    int passed = 0;
    std::optional<json> first_failure;

    bool ok() const { return passed == trials; }
    json to_json() const {
        json j = {{"suite", suite}, {"family", name}, {"trials", trials}, {"passed", passed}, {"failed", trials - passed}};
        j["first_failure"] = first_failure ? *first_failure : json(nullptr);
        return j;
    }
};

/// Worker count: PREQLAT_THREADS if set, else the hardware concurrency.
inline unsigned thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PREQLAT_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
        } catch (const std::exception&) {
        }
    }
    return n;
}

/// Runs one family; trials < 0 uses the family default.  Results do not depend
/// on the number of threads.
inline FamilyResult run_family(const Family& fam, std::uint64_t seed, int trials, unsigned threads) {
    const int n = fam.randomized ? (trials > 0 ? trials : fam.default_trials) : 1;
    std::vector<Outcome> results(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t; (t = next.fetch_add(1)) < n;) {
            const std::uint64_t s = trial_seed(seed, fam.name, static_cast<std::uint64_t>(t));
            Rng rng(s);
            Outcome o;
            try {
                o = fam.trial(rng);
            } catch (const std::exception& e) {
                o = {false, {{"error", e.what()}}};
            }
            results[static_cast<std::size_t>(t)] = std::move(o);
        }
    };
    const unsigned used = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < used; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    FamilyResult r{fam.suite, fam.name, n, 0, std::nullopt};
    for (int t = 0; t < n; ++t) {
        const auto& o = results[static_cast<std::size_t>(t)];
        if (o.ok) {
            ++r.passed;
        } else if (!r.first_failure) {
            json w = o.witness;
            w["trial"] = t;
            w["trial_seed"] = std::to_string(trial_seed(seed, fam.name, static_cast<std::uint64_t>(t)));
            r.first_failure = w;
        }
    }
    return r;
}

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<std::string> suites;
    std::vector<FamilyResult> families;

    bool ok() const {
        return std::all_of(families.begin(), families.end(), [](const FamilyResult& f) { return f.ok(); });
    }
    json to_json() const {
        json fams = json::array();
        int trials = 0, passed = 0;
        for (const auto& f : families) {
            fams.push_back(f.to_json());
            trials += f.trials;
            passed += f.passed;
        }
        return {{"seed", std::to_string(seed)},
                {"suites", suites},
                {"families", fams},
                {"totals", {{"trials", trials}, {"passed", passed}, {"failed", trials - passed}}},
                {"all_passed", ok()}};
    }
};

inline VerifyReport run_suites(const std::vector<std::string>& suites, std::uint64_t seed, int trials = -1,
                               unsigned threads = thread_count()) {
    VerifyReport rep;
    rep.seed = seed;
    rep.suites = suites;
    for (const auto& s : suites)
        for (const auto& fam : families_for(s)) rep.families.push_back(run_family(fam, seed, trials, threads));
    return rep;
}

}  // namespace preqlat::verify
