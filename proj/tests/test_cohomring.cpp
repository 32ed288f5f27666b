#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "preqlat/ring.hpp"
#include "preqlat/smith.hpp"

#include <random>

using namespace preqlat;
using namespace preqlat::cohom;

namespace {

IntMatrix int_matrix(const std::vector<std::vector<int>>& rows) {
    IntMatrix a(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = rows[i][j];
    return a;
}

std::vector<std::vector<Integer>> as_rows(const IntMatrix& a) {
    std::vector<std::vector<Integer>> out;
    for (std::size_t i = 0; i < a.rows(); ++i) out.push_back(a.row(i));
    return out;
}

Integer abs_det(const IntMatrix& a) {
    std::vector<oracle::QVec> m;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        oracle::QVec row;
        for (std::size_t j = 0; j < a.cols(); ++j) row.emplace_back(a(i, j));
        m.push_back(row);
    }
    return abs(numerator(oracle::gauss_det(m)));
}

void check_decomposition(const IntMatrix& A) {
    auto s = smith_normal_form(A);
    CHECK(s.U * s.D * s.V == A);
    CHECK(s.U * s.U_inv == IntMatrix::identity(A.rows()));
    CHECK(s.V * s.V_inv == IntMatrix::identity(A.cols()));
    CHECK(abs_det(s.U) == 1);
    CHECK(abs_det(s.V) == 1);
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(s.D(i, j) == 0);
    auto f = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
    for (const auto& x : f) CHECK(x > 0);
    CHECK(f == oracle::invariant_factors(as_rows(A)));
}

cealg::LiePresentation filiform4() {
    cealg::LiePresentation L({"e1", "e2", "e3", "e4"});
    L.set_bracket(0, 1, {{2, 1}});
    L.set_bracket(0, 2, {{3, 1}});
    return L;
}

// Betti numbers from the oracle differential: b_k = dim - rank d_k - rank d_{k-1}.
std::vector<std::size_t> oracle_betti(const cealg::LiePresentation& L) {
    const int m = L.dim();
    std::vector<std::size_t> ranks;
    for (int k = 0; k < m; ++k) {
        std::vector<oracle::QVec> cols;
        for (const auto& I : cealg::monomial_basis(m, k))
            cols.push_back(cealg::to_coordinates(oracle::delta_by_evaluation(cealg::Cochain::monomial(m, I), L)));
        ranks.push_back(oracle::rank(cols));
    }
    ranks.push_back(0);
    std::vector<std::size_t> b;
    for (int k = 0; k <= m; ++k)
        b.push_back(cealg::monomial_basis(m, k).size() - ranks[k] - (k ? ranks[k - 1] : 0));
    return b;
}

std::vector<CohomologyRing> presets() {
    std::vector<CohomologyRing> out;
    for (int r : {1, 2, 3, 6}) out.push_back(CohomologyRing::from_lie_algebra(cealg::heisenberg_times_line(r)));
    for (int m : {1, 2, 3, 4, 6}) out.push_back(CohomologyRing::torus(m));
    for (int g : {0, 1, 2, 3}) out.push_back(CohomologyRing::surface(g));
    out.push_back(CohomologyRing::from_lie_algebra(filiform4()));
    return out;
}

}  // namespace

TEST_CASE("smith normal form examples") {
    auto s = smith_normal_form(int_matrix({{2, 4}, {6, 8}}));
    CHECK(s.D == int_matrix({{2, 0}, {0, 4}}));
    check_decomposition(int_matrix({{2, 4}, {6, 8}}));

    auto id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.D == IntMatrix::identity(3));

    auto z = smith_normal_form(IntMatrix(3, 2));
    CHECK(z.D.is_zero());
    CHECK(z.rank() == 0);
    check_decomposition(IntMatrix(3, 2));

    check_decomposition(int_matrix({{0, 0, 6}, {0, 4, 0}, {10, 0, 0}}));
    CHECK(smith_normal_form(int_matrix({{0, 0, 6}, {0, 4, 0}, {10, 0, 0}})).invariant_factors() ==
          std::vector<Integer>{2, 2, 60});
}

TEST_CASE("smith normal form against determinantal divisors") {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<int> dim(1, 4), entry(-6, 6), sparse(0, 2);
    for (int trial = 0; trial < 300; ++trial) {
        IntMatrix A(static_cast<std::size_t>(dim(gen)), static_cast<std::size_t>(dim(gen)));
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = sparse(gen) ? entry(gen) : 0;
        check_decomposition(A);
    }
}

TEST_CASE("integer kernel and hermite basis") {
    auto A = int_matrix({{2, 4, 6}});
    auto K = integer_kernel(A);
    CHECK(K.size() == 2);
    for (const auto& v : K) CHECK(A.apply(std::span<const Integer>(v)) == std::vector<Integer>{0});
    auto H = hermite_normal_form({{0, 2}, {3, 0}}, 2);
    CHECK(H == std::vector<std::vector<Integer>>{{3, 0}, {0, 2}});
}

TEST_CASE("heisenberg cohomology groups") {
    for (int r : {1, 2, 3, 6}) {
        auto L = cealg::heisenberg_times_line(r);
        auto R = CohomologyRing::from_lie_algebra(L);
        CHECK(R.label() == "H*(CE_Z)");
        std::vector<std::size_t> betti;
        for (int k = 0; k <= 4; ++k) betti.push_back(R.group(k).betti);
        CHECK(betti == std::vector<std::size_t>{1, 3, 4, 3, 1});
        CHECK(betti == oracle_betti(L));

        auto d = cealg::integral_complex_matrices(L);
        for (int k = 1; k <= 4; ++k) {
            std::vector<Integer> expect;
            for (const auto& f : oracle::invariant_factors(as_rows(d[static_cast<std::size_t>(k - 1)])))
                if (f > 1) expect.push_back(f);
            CHECK(R.group(k).torsion == expect);
        }
        const std::vector<Integer> tors = r == 1 ? std::vector<Integer>{} : std::vector<Integer>{r};
        CHECK(R.group(2).torsion == tors);
        CHECK(R.group(3).torsion == tors);
        CHECK(R.group(1).free_names == std::vector<std::string>{"x*", "p*", "z*"});
        if (r > 1) CHECK(R.group(2).torsion_names == std::vector<std::string>{"x*^p*"});
    }
}

TEST_CASE("reduction of cocycles") {
    for (int r : {2, 3, 6}) {
        auto L = cealg::heisenberg_times_line(r);
        auto R = CohomologyRing::from_lie_algebra(L);
        auto zh = cealg::Cochain::monomial(4, {2, 3});
        CHECK(R.reduce(cealg::ce_differential(zh, L)).is_zero());
        auto xp = cealg::Cochain::monomial(4, {0, 1});
        CHECK(R.reduce(Rational(r) * xp).is_zero());
        auto c = R.reduce(xp);
        CHECK(c.coords.free == IntVector(4, Integer(0)));
        CHECK(c.coords.torsion == IntVector{1});
        for (int j = 1; j < r; ++j) CHECK_FALSE(R.reduce(Rational(j) * xp).is_zero());
        CHECK_THROWS_AS(R.reduce(cealg::Cochain::monomial(4, {3})), NotACocycle);
    }
}

TEST_CASE("cup products and pairings") {
    auto T2 = CohomologyRing::torus(2);
    auto e1 = T2.free_generator(1, 0), e2 = T2.free_generator(1, 1);
    CHECK(T2.fundamental_pairing(T2.cup(e1, e2)) == 1);
    CHECK(T2.fundamental_pairing(T2.cup(e2, e1)) == -1);
    CHECK(T2.cup(e1, e1).is_zero());
    CHECK(T2.cup(T2.unit(), e1) == e1);

    auto H = CohomologyRing::from_lie_algebra(cealg::heisenberg_times_line(3));
    auto x = H.free_generator(1, 0), p = H.free_generator(1, 1);
    auto xp = H.cup(x, p);
    CHECK(xp.coords.free == IntVector(4, Integer(0)));
    CHECK(xp.coords.torsion == IntVector{1});
    CHECK_THROWS(H.fundamental_pairing(x));

    for (const auto& R : presets()) {
        for (int k = 0; k <= R.top_degree(); ++k) {
            auto P = R.poincare_pairing(k);
            CHECK(abs_det(P) == 1);
        }
        for (int p = 0; p <= R.top_degree(); ++p)
            for (int q = 0; p + q <= R.top_degree(); ++q)
                for (std::size_t i = 0; i < R.group(p).betti; ++i)
                    for (std::size_t j = 0; j < R.group(q).betti; ++j) {
                        auto a = R.free_generator(p, i), b = R.free_generator(q, j);
                        auto ab = R.cup(a, b), ba = R.cup(b, a);
                        auto minus_a = a.coords.free;
                        for (auto& e : minus_a) e = -e;
                        auto expect = (p * q) % 2 ? R.cup(R.make_class(p, minus_a), b) : ab;
                        CHECK(ba == expect);
                    }
    }
}

TEST_CASE("surface presets") {
    for (int g = 0; g <= 3; ++g) {
        auto S = CohomologyRing::surface(g);
        CHECK(S.label() == "H*(M,Z)");
        CHECK(S.group(0).betti == 1);
        CHECK(S.group(1).betti == static_cast<std::size_t>(2 * g));
        CHECK(S.group(2).betti == 1);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                auto a = S.free_generator(1, static_cast<std::size_t>(i));
                auto b = S.free_generator(1, static_cast<std::size_t>(g + j));
                CHECK(S.fundamental_pairing(S.cup(a, b)) == (i == j ? 1 : 0));
                CHECK(S.fundamental_pairing(S.cup(b, a)) == (i == j ? -1 : 0));
                CHECK(S.cup(a, S.free_generator(1, static_cast<std::size_t>(j))).is_zero());
            }
    }
    CHECK_THROWS_AS(CohomologyRing::surface(-1), InputError);
}

TEST_CASE("torus presets") {
    for (int m : {1, 2, 3, 4, 6}) {
        auto T = CohomologyRing::torus(m);
        for (int k = 0; k <= m; ++k) {
            CHECK(T.group(k).betti == static_cast<std::size_t>(binomial(m, k)));
            CHECK(T.group(k).torsion.empty());
        }
    }
    CHECK(CohomologyRing::torus(2).group(1).free_names == std::vector<std::string>{"e1*", "e2*"});
    CHECK_THROWS_AS(CohomologyRing::torus(0), InputError);
}

TEST_CASE("class names and rejected presentations") {
    auto H = CohomologyRing::from_lie_algebra(cealg::heisenberg_times_line(2));
    CHECK(H.class_name(H.make_class(1, {3, 0, -1})) == "3*x* - z*");
    CHECK(H.class_name(H.zero(1)) == "0");

    cealg::LiePresentation sl2({"e", "f", "h"});
    sl2.set_bracket(0, 1, {{2, 1}});
    sl2.set_bracket(2, 0, {{0, 2}});
    sl2.set_bracket(2, 1, {{1, -2}});
    CHECK_THROWS_AS(CohomologyRing::from_lie_algebra(sl2), InputError);
}
