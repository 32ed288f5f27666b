#pragma once

#include "preqlat/cealg.hpp"
#include "preqlat/cohomology.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace preqlat::cohom {

/// An integral cohomology class in a fixed degree.
struct CohomologyClass {
    int degree = 0;
    ClassCoordinates coords;

    bool is_zero() const {
        for (const auto& x : coords.free)
            if (x != 0) return false;
        for (const auto& x : coords.torsion)
            if (x != 0) return false;
        return true;
    }
    friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

struct GroupSummary {
    std::size_t betti = 0;
    IntVector torsion;
    std::vector<std::string> free_names;
    std::vector<std::string> torsion_names;
};

/// Graded cohomology ring with cup product and a fundamental class.  Either
/// backed by a Chevalley-Eilenberg cochain model (nilmanifolds, tori) or by
/// an explicit multiplication table on generators (surfaces).
class CohomologyRing {
public:
    /// Preset identifier, e.g. "nilmanifold", "torus", "surface".
    const std::string& kind() const { return kind_; }
    /// "H*(CE_Z)" for cochain-model rings, "H*(M,Z)" for direct presets.
    const std::string& label() const { return label_; }
    int top_degree() const { return static_cast<int>(groups_.size()) - 1; }
    const GroupSummary& group(int k) const { return groups_.at(static_cast<std::size_t>(k)); }
    const std::optional<cealg::LiePresentation>& lie() const { return lie_; }
    const GradedIntegralCohomology* cochain_cohomology() const { return coh_ ? &*coh_ : nullptr; }

    CohomologyClass zero(int k) const {
        const auto& g = group(k);
        return {k, {IntVector(g.betti, Integer(0)), IntVector(g.torsion.size(), Integer(0))}};
    }
    CohomologyClass free_generator(int k, std::size_t j) const {
        auto c = zero(k);
        c.coords.free.at(j) = 1;
        return c;
    }
    CohomologyClass torsion_generator(int k, std::size_t i) const {
        auto c = zero(k);
        c.coords.torsion.at(i) = 1;
        return c;
    }
    CohomologyClass unit() const { return free_generator(0, 0); }
    CohomologyClass orientation() const { return free_generator(top_degree(), 0); }

    CohomologyClass make_class(int k, IntVector free, IntVector torsion = {}) const {
        auto c = zero(k);
        if (free.size() != c.coords.free.size()) throw std::invalid_argument("wrong number of free coordinates");
        if (torsion.empty()) torsion.assign(c.coords.torsion.size(), Integer(0));
        if (torsion.size() != c.coords.torsion.size())
            throw std::invalid_argument("wrong number of torsion coordinates");
        c.coords.free = std::move(free);
        for (std::size_t i = 0; i < torsion.size(); ++i)
            c.coords.torsion[i] = mod_floor(torsion[i], group(k).torsion[i]);
        return c;
    }

    /// Reduction of a closed integral cochain (cochain-model rings only).
    CohomologyClass reduce(const cealg::Cochain& c) const {
        require_model();
        auto coords = to_integer_coordinates(c);
        return {c.degree(), (*coh_)[c.degree()].reduce(coords)};
    }

    /// Representative cochain of a class (cochain-model rings only).
    cealg::Cochain representative(const CohomologyClass& u) const {
        require_model();
        const auto& g = (*coh_)[u.degree];
        const int m = lie_->dim();
        RatVector v(g.cochain_dim, Rational(0));
        for (std::size_t j = 0; j < g.betti; ++j)
            for (std::size_t s = 0; s < v.size(); ++s) v[s] += Rational(u.coords.free[j] * g.free_reps[j][s]);
        for (std::size_t i = 0; i < g.torsion.size(); ++i)
            for (std::size_t s = 0; s < v.size(); ++s)
                v[s] += Rational(u.coords.torsion[i] * g.torsion_reps[i][s]);
        return cealg::from_coordinates(m, u.degree, v);
    }

    CohomologyClass cup(const CohomologyClass& u, const CohomologyClass& v) const {
        const int k = u.degree + v.degree;
        if (k > top_degree()) throw std::invalid_argument("cup product exceeds top degree");
        if (coh_) return reduce(cealg::wedge(representative(u), representative(v)));

        auto out = zero(k);
        auto expand = [&](const CohomologyClass& c) {
            std::vector<std::pair<std::size_t, Integer>> terms;  // generator index, coefficient
            const auto& g = group(c.degree);
            for (std::size_t j = 0; j < g.betti; ++j)
                if (c.coords.free[j] != 0) terms.emplace_back(j, c.coords.free[j]);
            for (std::size_t i = 0; i < g.torsion.size(); ++i)
                if (c.coords.torsion[i] != 0) terms.emplace_back(g.betti + i, c.coords.torsion[i]);
            return terms;
        };
        for (const auto& [a, ca] : expand(u))
            for (const auto& [b, cb] : expand(v)) {
                auto it = table_.find({u.degree, a, v.degree, b});
                if (it == table_.end()) continue;
                for (std::size_t j = 0; j < out.coords.free.size(); ++j)
                    out.coords.free[j] += ca * cb * it->second.coords.free[j];
                for (std::size_t i = 0; i < out.coords.torsion.size(); ++i)
                    out.coords.torsion[i] += ca * cb * it->second.coords.torsion[i];
            }
        for (std::size_t i = 0; i < out.coords.torsion.size(); ++i)
            out.coords.torsion[i] = mod_floor(out.coords.torsion[i], group(k).torsion[i]);
        return out;
    }

    /// <t, [M]> for a top-degree class.
    Integer fundamental_pairing(const CohomologyClass& t) const {
        if (t.degree != top_degree()) throw std::invalid_argument("pairing needs a top-degree class");
        return t.coords.free.at(0);
    }

    /// Matrix of <a_i cup b_j, [M]> on free generators of H^k x H^(top-k).
    IntMatrix poincare_pairing(int k) const {
        const auto& a = group(k);
        const auto& b = group(top_degree() - k);
        IntMatrix p(a.betti, b.betti);
        for (std::size_t i = 0; i < a.betti; ++i)
            for (std::size_t j = 0; j < b.betti; ++j)
                p(i, j) = fundamental_pairing(cup(free_generator(k, i), free_generator(top_degree() - k, j)));
        return p;
    }

    /// Builds the ring of H*(CE_Z) for a nilpotent presentation with integral
    /// structure constants.  The orientation is the lexicographic top monomial.
    static CohomologyRing from_lie_algebra(const cealg::LiePresentation& L, std::string kind = "nilmanifold") {
        auto report = cealg::validate_presentation(L);
        if (!report.jacobi) throw InputError("presentation violates the Jacobi identity");
        if (!report.nilpotent) throw InputError("presentation is not nilpotent");
        auto d = cealg::integral_complex_matrices(L);
        std::vector<std::size_t> dims;
        for (int k = 0; k <= L.dim(); ++k) dims.push_back(cealg::monomial_basis(L.dim(), k).size());

        CohomologyRing R;
        R.kind_ = std::move(kind);
        R.label_ = "H*(CE_Z)";
        R.lie_ = L;
        R.coh_ = GradedIntegralCohomology(d, dims);
        for (int k = 0; k <= L.dim(); ++k) {
            const auto& g = (*R.coh_)[k];
            GroupSummary s;
            s.betti = g.betti;
            s.torsion = g.torsion;
            for (const auto& rep : g.free_reps) s.free_names.push_back(R.cochain_name(k, rep));
            for (const auto& rep : g.torsion_reps) s.torsion_names.push_back(R.cochain_name(k, rep));
            R.groups_.push_back(std::move(s));
        }
        const auto& top = R.groups_.back();
        if (top.betti != 1 || !top.torsion.empty())
            throw InputError("top cohomology is not Z; no orientation class");
        std::vector<int> all(static_cast<std::size_t>(L.dim()));
        for (int i = 0; i < L.dim(); ++i) all[static_cast<std::size_t>(i)] = i;
        auto vol = R.reduce(cealg::Cochain::monomial(L.dim(), all));
        if (vol.coords.free[0] != 1) throw std::logic_error("top generator is not the top monomial");
        return R;
    }

    /// Closed orientable surface of genus g: H^1 = Z^2g with a_i cup b_j = delta_ij [M].
    static CohomologyRing surface(int genus) {
        if (genus < 0) throw InputError("genus must be non-negative");
        CohomologyRing R;
        R.kind_ = "surface";
        R.label_ = "H*(M,Z)";
        const auto g = static_cast<std::size_t>(genus);
        GroupSummary h0, h1, h2;
        h0.betti = 1;
        h0.free_names = {"1"};
        h1.betti = 2 * g;
        for (std::size_t i = 1; i <= g; ++i) h1.free_names.push_back("a" + std::to_string(i));
        for (std::size_t i = 1; i <= g; ++i) h1.free_names.push_back("b" + std::to_string(i));
        h2.betti = 1;
        h2.free_names = {"[M]"};
        R.groups_ = {h0, h1, h2};

        for (int k = 0; k <= 2; ++k)
            for (std::size_t j = 0; j < R.group(k).betti; ++j) {
                R.table_[{0, 0, k, j}] = R.free_generator(k, j);
                R.table_[{k, j, 0, 0}] = R.free_generator(k, j);
            }
        for (std::size_t i = 0; i < g; ++i) {
            auto vol = R.orientation();
            auto neg = vol;
            neg.coords.free[0] = -1;
            R.table_[{1, i, 1, g + i}] = vol;
            R.table_[{1, g + i, 1, i}] = neg;
        }
        return R;
    }

    static CohomologyRing torus(int m) {
        if (m <= 0) throw InputError("torus dimension must be positive");
        return from_lie_algebra(cealg::abelian(m), "torus");
    }

    std::string class_name(const CohomologyClass& c) const {
        const auto& g = group(c.degree);
        std::string out;
        auto append = [&out](const Integer& coeff, const std::string& name) {
            if (coeff == 0) return;
            Integer a = coeff;
            if (out.empty()) {
                if (a < 0) out += "-";
            } else {
                out += a < 0 ? " - " : " + ";
            }
            if (a < 0) a = -a;
            bool compound = name.find(' ') != std::string::npos;
            if (a != 1) out += to_string(a) + "*";
            out += (compound && a != 1) ? "(" + name + ")" : name;
        };
        for (std::size_t j = 0; j < g.betti; ++j) append(c.coords.free[j], g.free_names[j]);
        for (std::size_t i = 0; i < g.torsion.size(); ++i) append(c.coords.torsion[i], g.torsion_names[i]);
        return out.empty() ? "0" : out;
    }

private:
    void require_model() const {
        if (!coh_) throw std::logic_error("ring has no cochain model");
    }

    IntVector to_integer_coordinates(const cealg::Cochain& c) const {
        IntVector out;
        for (const auto& q : cealg::to_coordinates(c)) {
            if (!is_integer(q)) throw std::invalid_argument("cochain is not integral");
            out.push_back(numerator(q));
        }
        return out;
    }

    std::string cochain_name(int k, const IntVector& rep) const {
        RatVector v;
        for (const auto& x : rep) v.emplace_back(x);
        return cealg::from_coordinates(lie_->dim(), k, v).str(lie_->basis_names());
    }

    std::string kind_;
    std::string label_;
    std::vector<GroupSummary> groups_;
    std::optional<cealg::LiePresentation> lie_;
    std::optional<GradedIntegralCohomology> coh_;
    std::map<std::tuple<int, std::size_t, int, std::size_t>, CohomologyClass> table_;
};

}  // namespace preqlat::cohom
