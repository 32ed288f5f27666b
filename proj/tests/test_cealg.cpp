#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "preqlat/cealg.hpp"

#include <random>

using namespace preqlat;
using namespace preqlat::cealg;

namespace {

LiePresentation filiform(int m) {
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i) names.push_back("e" + std::to_string(i));
    LiePresentation L(names);
    for (int k = 1; k + 1 < m; ++k) L.set_bracket(0, k, {{k + 1, 1}});
    return L;
}

LiePresentation heisenberg5() {
    LiePresentation L({"x1", "y1", "x2", "y2", "z"});
    L.set_bracket(0, 1, {{4, 1}});
    L.set_bracket(2, 3, {{4, 1}});
    return L;
}

// [e1,e2] = e3, [e1,e3] = e4, [e2,e3] = e5
LiePresentation free_step3() {
    LiePresentation L({"e1", "e2", "e3", "e4", "e5"});
    L.set_bracket(0, 1, {{2, 1}});
    L.set_bracket(0, 2, {{3, 1}});
    L.set_bracket(1, 2, {{4, 1}});
    return L;
}

std::vector<LiePresentation> known_nilpotent() {
    return {heisenberg_times_line(1), heisenberg_times_line(2), heisenberg_times_line(6), filiform(4),
            filiform(5), heisenberg5(), free_step3(), abelian(3)};
}

using QMat = std::vector<std::vector<Rational>>;

// Random unimodular P with integer inverse, built from elementary moves.
std::pair<QMat, QMat> random_unimodular(std::mt19937_64& gen, int m) {
    QMat P(m, std::vector<Rational>(m, 0)), Pinv = P;
    for (int i = 0; i < m; ++i) P[i][i] = Pinv[i][i] = 1;
    std::uniform_int_distribution<int> idx(0, m - 1), coef(-2, 2);
    for (int step = 0; step < 6; ++step) {
        int i = idx(gen), j = idx(gen);
        int c = coef(gen);
        if (i == j || c == 0) continue;
        // P <- P E with E = I + c e_ij (column j += c column i); inverse P^-1 <- E^-1 P^-1
        for (int r = 0; r < m; ++r) P[r][j] += c * P[r][i];
        for (int col = 0; col < m; ++col) Pinv[i][col] -= c * Pinv[j][col];
    }
    return {P, Pinv};
}

// Presentation in the basis f_i = sum_j P_ji e_j.
LiePresentation conjugate(const LiePresentation& L, const QMat& P, const QMat& Pinv) {
    const int m = L.dim();
    LiePresentation out(L.basis_names());
    auto col = [&](int i) {
        std::vector<Rational> v(m);
        for (int r = 0; r < m; ++r) v[r] = P[r][i];
        return v;
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto br = L.bracket(col(i), col(j));
            std::map<int, Rational> coeffs;
            for (int k = 0; k < m; ++k) {
                Rational s = 0;
                for (int l = 0; l < m; ++l) s += Pinv[k][l] * br[l];
                if (s != 0) coeffs[k] = s;
            }
            out.set_bracket(i, j, coeffs);
        }
    return out;
}

Cochain random_cochain(std::mt19937_64& gen, int m, int k) {
    std::uniform_int_distribution<int> coef(-3, 3);
    Cochain c(m, k);
    for (const auto& I : monomial_basis(m, k)) c.add_term(I, coef(gen));
    return c;
}

}  // namespace

TEST_CASE("presentation validation") {
    for (const auto& L : known_nilpotent()) CHECK(validate_presentation(L).ok());

    auto rep = validate_presentation(heisenberg_times_line(3));
    CHECK(rep.nilpotency_class == 2);
    CHECK(validate_presentation(filiform(5)).nilpotency_class == 4);
    CHECK(validate_presentation(abelian(4)).nilpotency_class == 1);

    LiePresentation sl2({"e", "f", "h"});
    sl2.set_bracket(0, 1, {{2, 1}});
    sl2.set_bracket(2, 0, {{0, 2}});
    sl2.set_bracket(2, 1, {{1, -2}});
    auto s = validate_presentation(sl2);
    CHECK(s.jacobi);
    CHECK_FALSE(s.nilpotent);

    LiePresentation bad({"a", "b", "c"});
    bad.set_bracket(0, 1, {{1, 1}});
    bad.set_bracket(0, 2, {{1, 1}});
    bad.set_bracket(1, 2, {{0, 1}});
    auto b = validate_presentation(bad);
    CHECK_FALSE(b.jacobi);
    REQUIRE(b.jacobi_violation);
    CHECK(*b.jacobi_violation == std::array<int, 3>{0, 1, 2});

    LiePresentation L({"a", "b"});
    CHECK_THROWS_AS(L.set_bracket(0, 0, {}), InputError);
    CHECK_THROWS_AS(L.set_bracket(0, 5, {}), InputError);
}

TEST_CASE("wedge products of monomials") {
    const int m = 4;
    auto e = [&](Monomial I) { return Cochain::monomial(m, I); };
    CHECK(wedge(e({0}), e({1})) == e({0, 1}));
    CHECK(wedge(e({1}), e({0})) == Rational(-1) * e({0, 1}));
    CHECK(wedge(e({0}), e({0})).is_zero());
    CHECK(wedge(e({0, 2}), e({1, 3})) == Rational(-1) * e({0, 1, 2, 3}));
    CHECK(wedge(e({1, 3}), e({0})) == e({0, 1, 3}));
    CHECK(wedge(Cochain::unit(m), e({2})) == e({2}));
    CHECK_THROWS(Cochain::monomial(m, {1, 0}));
}

TEST_CASE("heisenberg differential") {
    for (int r : {1, 2, 3, 6}) {
        auto L = heisenberg_times_line(r);
        auto dh = ce_differential(Cochain::monomial(4, {3}), L);
        Cochain expect(4, 2);
        expect.add_term({0, 1}, -r);
        CHECK(dh == expect);
        for (int i : {0, 1, 2}) CHECK(ce_differential(Cochain::monomial(4, {i}), L).is_zero());
        CHECK(ce_differential(Cochain::monomial(4, {0, 3}), L).is_zero());
        CHECK(ce_differential(Cochain::monomial(4, {2, 3}), L) == Rational(-1) * wedge(Cochain::monomial(4, {2}), expect));
    }
}

TEST_CASE("differential agrees with the evaluation formula") {
    std::mt19937_64 gen(7);
    for (const auto& L : known_nilpotent())
        for (int k = 0; k < L.dim(); ++k)
            for (int trial = 0; trial < 3; ++trial) {
                auto a = random_cochain(gen, L.dim(), k);
                CHECK(ce_differential(a, L) == oracle::delta_by_evaluation(a, L));
            }
}

TEST_CASE("delta squared, Leibniz rule and graded commutativity") {
    std::mt19937_64 gen(11);
    for (const auto& L : known_nilpotent()) {
        const int m = L.dim();
        for (int trial = 0; trial < 10; ++trial) {
            std::uniform_int_distribution<int> deg(0, m - 1);
            const int p = deg(gen), q = std::uniform_int_distribution<int>(0, m - p)(gen);
            auto a = random_cochain(gen, m, p), b = random_cochain(gen, m, q);
            if (p + 1 < m) CHECK(ce_differential(ce_differential(a, L), L).is_zero());
            CHECK(wedge(a, b) == Rational((p * q) % 2 ? -1 : 1) * wedge(b, a));
            if (p + q < m) {
                auto lhs = ce_differential(wedge(a, b), L);
                auto rhs = wedge(ce_differential(a, L), b) + Rational(p % 2 ? -1 : 1) * wedge(a, ce_differential(b, L));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("d2 d1 = 0 on random unimodular conjugates") {
    std::mt19937_64 gen(2024);
    const auto algebras = known_nilpotent();
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& L0 = algebras[static_cast<std::size_t>(trial) % algebras.size()];
        auto [P, Pinv] = random_unimodular(gen, L0.dim());
        auto L = conjugate(L0, P, Pinv);
        REQUIRE(L.has_integral_constants());
        REQUIRE(validate_presentation(L).ok());
        auto d = integral_complex_matrices(L);
        for (std::size_t k = 0; k + 1 < d.size(); ++k) CHECK((d[k + 1] * d[k]).is_zero());
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("complex matrices and coordinates") {
    auto L = heisenberg_times_line(2);
    auto d = complex_matrices(L);
    REQUIRE(d.size() == 4);
    CHECK(d[0].rows() == 4);
    CHECK(d[1].rows() == 6);
    CHECK(d[1].cols() == 4);
    // column of h* in the basis xp, xz, xh, pz, ph, zh
    CHECK(d[1](0, 3) == -2);
    std::mt19937_64 gen(3);
    auto c = random_cochain(gen, 4, 2);
    CHECK(from_coordinates(4, 2, to_coordinates(c)) == c);

    LiePresentation q({"a", "b", "c"});
    q.set_bracket(0, 1, {{2, Rational(1, 2)}});
    CHECK_FALSE(q.has_integral_constants());
    CHECK_THROWS_AS(integral_complex_matrices(q), InputError);
}

TEST_CASE("cochain rendering") {
    auto L = heisenberg_times_line(3);
    auto dh = ce_differential(Cochain::monomial(4, {3}), L);
    CHECK(dh.str(L.basis_names()) == "-3 x*^p*");
    CHECK(Cochain(4, 1).str(L.basis_names()) == "0");
}
