#pragma once

#include "preqlat/ring.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

/// Euler classes, Gysin kernels and the lattice of integrable cocycle classes.
namespace preqlat::prequant {

using cohom::CohomologyClass;
using cohom::CohomologyRing;
using cohom::IntVector;
using cohom::RatVector;

/// Integral degree-2 class standing in for [omega]; n is half the dimension.
struct SymplecticClass {
    CohomologyClass omega;
    int n = 0;
};

/// Euler class of a prequantum bundle: free part = [omega], torsion part free to choose.
struct EulerClass {
    CohomologyClass cls;
    int n = 0;
};

/// Lattice generators in H^1 coordinates together with the prefactor q*(2pi)^-1.
struct IntegrableLattice {
    std::vector<RatVector> generators;
    ExactScalar prefactor;
    Integer level = 1;
    std::size_t rank() const { return generators.size(); }
};

inline CohomologyClass power(const CohomologyRing& R, const CohomologyClass& u, int n) {
    CohomologyClass acc = R.unit();
    for (int i = 0; i < n; ++i) acc = R.cup(acc, u);
    return acc;
}

inline SymplecticClass make_symplectic(const CohomologyRing& R, CohomologyClass omega) {
    if (omega.degree != 2) throw std::invalid_argument("symplectic class must have degree 2");
    if (R.top_degree() % 2 != 0) throw InputError("symplectic manifolds have even dimension");
    SymplecticClass s{std::move(omega), R.top_degree() / 2};
    if (R.fundamental_pairing(power(R, s.omega, s.n)) == 0)
        throw InputError("class is degenerate: <omega^n, [M]> = 0");
    return s;
}

/// <omega^n, [M]> / n!, required to be positive.
inline Rational liouville_volume(const CohomologyRing& R, const SymplecticClass& w) {
    Rational vol(R.fundamental_pairing(power(R, w.omega, w.n)), factorial(static_cast<unsigned>(w.n)));
    if (vol <= 0) throw std::domain_error("not a positive symplectic class for this orientation");
    return vol;
}

/// One Euler class per element of the torsion subgroup of H^2, in lexicographic order.
inline std::vector<EulerClass> euler_candidates(const CohomologyRing& R, const SymplecticClass& w) {
    const auto& torsion = R.group(2).torsion;
    std::vector<EulerClass> out;
    IntVector t(torsion.size(), Integer(0));
    for (;;) {
        out.push_back({R.make_class(2, w.omega.coords.free, t), w.n});
        std::size_t i = torsion.size();
        for (;;) {
            if (i == 0) return out;
            --i;
            if (++t[i] < torsion[i]) break;
            t[i] = 0;
        }
    }
}

inline EulerClass euler_class(const CohomologyRing& R, const SymplecticClass& w, IntVector torsion = {}) {
    return {R.make_class(2, w.omega.coords.free, std::move(torsion)), w.n};
}

/// Hermite basis of {alpha in H^1(M,Z) : e cup alpha = 0 in H^3(M,Z)}, torsion included.
inline std::vector<IntVector> gysin_kernel(const CohomologyRing& R, const EulerClass& e) {
    const std::size_t b1 = R.group(1).betti;
    std::vector<IntVector> basis;
    if (b1 == 0) return basis;
    if (R.top_degree() < 3) {
        for (std::size_t j = 0; j < b1; ++j) {
            IntVector v(b1, Integer(0));
            v[j] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    const auto& h3 = R.group(3);
    const std::size_t b3 = h3.betti, t3 = h3.torsion.size();
    // x in Z^b1 is in the kernel iff exists y: F x = 0 and T x + D y = 0.
    IntMatrix M(b3 + t3, b1 + t3);
    for (std::size_t j = 0; j < b1; ++j) {
        auto img = R.cup(e.cls, R.free_generator(1, j));
        for (std::size_t i = 0; i < b3; ++i) M(i, j) = img.coords.free[i];
        for (std::size_t i = 0; i < t3; ++i) M(b3 + i, j) = img.coords.torsion[i];
    }
    for (std::size_t i = 0; i < t3; ++i) M(b3 + i, b1 + i) = h3.torsion[i];
    std::vector<IntVector> projected;
    for (const auto& v : integer_kernel(M)) projected.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(b1));
    return hermite_normal_form(projected, b1);
}

/// Lambda_0 at level k: the Gysin kernel with prefactor k (n+1) / (2 pi vol).
inline IntegrableLattice integrable_lattice(const CohomologyRing& R, const EulerClass& e, const Integer& level) {
    SymplecticClass w{R.make_class(2, e.cls.coords.free), e.n};
    const Rational vol = liouville_volume(R, w);
    IntegrableLattice lat;
    lat.level = level;
    lat.prefactor = ExactScalar(Rational(level) * Rational(e.n + 1) / vol, -1);
    for (const auto& g : gysin_kernel(R, e)) {
        RatVector v;
        for (const auto& x : g) v.emplace_back(x);
        lat.generators.push_back(std::move(v));
    }
    return lat;
}

inline std::string generator_name(const CohomologyRing& R, const RatVector& coords) {
    IntVector iv;
    for (const auto& q : coords) iv.push_back(numerator(q));
    return R.class_name(R.make_class(1, iv));
}

/// Serializes a lattice; when candidates are supplied, adds the per-Euler-class table.
inline nlohmann::json lattice_report(const IntegrableLattice& lat, const CohomologyRing& R,
                                     const std::vector<EulerClass>& candidates = {}) {
    nlohmann::json j;
    j["rank"] = lat.rank();
    j["level"] = lat.level.str();
    j["prefactor"] = exact_to_json(lat.prefactor);
    j["generators"] = nlohmann::json::array();
    for (const auto& g : lat.generators) {
        nlohmann::json coords = nlohmann::json::array();
        for (const auto& q : g) coords.push_back(to_string(q));
        j["generators"].push_back({{"coords", coords}, {"names", generator_name(R, g)}});
    }
    j["h1_basis"] = R.group(1).free_names;
    if (!candidates.empty()) {
        nlohmann::json table = nlohmann::json::array();
        bool identical = true;
        std::vector<RatVector> first;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            auto l = integrable_lattice(R, candidates[c], lat.level);
            if (c == 0) first = l.generators;
            identical = identical && l.generators == first;
            nlohmann::json tors = nlohmann::json::array();
            for (const auto& t : candidates[c].cls.coords.torsion) tors.push_back(t.str());
            nlohmann::json gens = nlohmann::json::array();
            for (const auto& g : l.generators) gens.push_back(generator_name(R, g));
            table.push_back({{"euler_torsion", tors},
                             {"euler_class", R.class_name(candidates[c].cls)},
                             {"rank", l.rank()},
                             {"generators", gens}});
        }
        j["candidates"] = table;
        j["kernel_independent_of_torsion"] = identical;
    }
    return j;
}

/// Thurston-type nilmanifold M_r with omega_ab = a h*^x* + b z*^p*.
struct ThurstonSetup {
    CohomologyRing ring;
    SymplecticClass omega;
};

inline ThurstonSetup thurston(const Integer& r, const Integer& a, const Integer& b) {
    if (r <= 0) throw InputError("r must be positive");
    if (a == 0 || b == 0) throw InputError("a and b must be nonzero");
    auto R = CohomologyRing::from_lie_algebra(cealg::heisenberg_times_line(r));
    // basis order x=0, p=1, z=2, h=3; h^x = -x^h, z^p = -p^z
    cealg::Cochain w(4, 2);
    w.add_term({0, 3}, Rational(-a));
    w.add_term({1, 2}, Rational(-b));
    auto omega = make_symplectic(R, R.reduce(w));
    return {std::move(R), std::move(omega)};
}

}  // namespace preqlat::prequant
