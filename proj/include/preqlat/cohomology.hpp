#pragma once

#include "preqlat/smith.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace preqlat::cohom {

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Thrown by reduce() for cochains that are not closed.
class NotACocycle : public std::invalid_argument {
public:
    NotACocycle() : std::invalid_argument("not a cocycle") {}
};

/// Coordinates of an integral class: free part in Z^b, torsion part in (+) Z/d_i.
struct ClassCoordinates {
    IntVector free;
    IntVector torsion;
    friend bool operator==(const ClassCoordinates&, const ClassCoordinates&) = default;
};

/// H^k of a finite free cochain complex over Z, with representatives and a
/// reduction map from cocycles to coordinates.
class CohomologyGroup {
public:
    int degree = 0;
    std::size_t cochain_dim = 0;
    std::size_t betti = 0;
    IntVector torsion;                   ///< invariant factors > 1
    std::vector<IntVector> free_reps;    ///< closed cochains, one per free generator
    std::vector<IntVector> torsion_reps; ///< closed cochains, one per torsion factor

    /// Coordinates of a closed integral cochain.
    ClassCoordinates reduce(const IntVector& c) const {
        check_closed(to_rat(c));
        IntVector y = U_inv_.apply(std::span<const Integer>(c));
        IntVector t_raw;
        for (std::size_t s = 0; s < torsion_slots_.size(); ++s) {
            std::size_t i = torsion_slots_[s];
            t_raw.push_back(mod_floor(y[i], torsion[s]));
        }
        IntVector f_raw = raw_free(y);
        return finish(f_raw, t_raw);
    }

    /// Free coordinates of a closed rational cochain (torsion is invisible over R).
    RatVector reduce_real(const RatVector& c) const {
        check_closed(c);
        RatVector y = to_rational(U_inv_).apply(std::span<const Rational>(c));
        RatVector rest(y.begin() + static_cast<std::ptrdiff_t>(prev_rank_), y.end());
        RatVector z = to_rational(kernel_V_).apply(std::span<const Rational>(rest));
        RatVector f_raw(z.begin() + static_cast<std::ptrdiff_t>(kernel_rank_), z.end());
        RatVector out(betti, Rational(0));
        for (std::size_t i = 0; i < betti; ++i)
            for (std::size_t j = 0; j < betti; ++j) out[i] += Rational(free_change_(i, j)) * f_raw[j];
        return out;
    }

    bool is_closed(const RatVector& c) const {
        if (!next_) return true;
        for (const auto& v : next_->apply(std::span<const Rational>(c)))
            if (v != 0) return false;
        return true;
    }

private:
    friend class GradedIntegralCohomology;

    static RatVector to_rat(const IntVector& v) {
        RatVector r;
        r.reserve(v.size());
        for (const auto& x : v) r.emplace_back(x);
        return r;
    }

    void check_closed(const RatVector& c) const {
        if (c.size() != cochain_dim) throw std::invalid_argument("cochain has wrong dimension");
        if (!is_closed(c)) throw NotACocycle();
    }

    IntVector raw_free(const IntVector& y) const {
        IntVector rest(y.begin() + static_cast<std::ptrdiff_t>(prev_rank_), y.end());
        IntVector z = kernel_V_.apply(std::span<const Integer>(rest));
        return IntVector(z.begin() + static_cast<std::ptrdiff_t>(kernel_rank_), z.end());
    }

    ClassCoordinates finish(const IntVector& f_raw, const IntVector& t_raw) const {
        ClassCoordinates out;
        out.free = free_change_.apply(std::span<const Integer>(f_raw));
        out.torsion.resize(torsion.size());
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            Integer shift = 0;
            for (std::size_t l = 0; l < betti; ++l) shift += torsion_shift_(i, l) * out.free[l];
            out.torsion[i] = mod_floor((t_raw[i] - shift) * torsion_unit_inv_[i], torsion[i]);
        }
        return out;
    }

    // y = U_inv c splits as [image slots | rest]; rest lies in ker B and
    // kernel_V_ maps it to coordinates whose tail is the raw free part.
    IntMatrix U_inv_;
    std::size_t prev_rank_ = 0;
    std::vector<std::size_t> torsion_slots_;
    IntMatrix kernel_V_;
    std::size_t kernel_rank_ = 0;
    // Change from raw generators to the canonical ones.
    IntMatrix free_change_;       // new free = free_change_ * raw free
    IntMatrix torsion_shift_;     // raw torsion coords of the new free generators
    IntVector torsion_unit_inv_;  // inverse units of the new torsion generators
    std::optional<RatMatrix> next_;
};

/// Cohomology of 0 -> C^0 -> C^1 -> ... -> C^N -> 0 given the integer matrices d_k.
class GradedIntegralCohomology {
public:
    GradedIntegralCohomology() = default;

    GradedIntegralCohomology(const std::vector<IntMatrix>& d, std::vector<std::size_t> dims) {
        if (dims.size() != d.size() + 1) throw std::invalid_argument("need one matrix per degree step");
        for (std::size_t k = 0; k < d.size(); ++k) {
            if (d[k].cols() != dims[k] || d[k].rows() != dims[k + 1])
                throw std::invalid_argument("differential has wrong shape");
        }
        for (std::size_t k = 0; k + 1 < d.size(); ++k)
            if (!(d[k + 1] * d[k]).is_zero()) throw std::invalid_argument("not a complex");

        for (std::size_t k = 0; k < dims.size(); ++k) {
            IntMatrix prev = k == 0 ? IntMatrix(dims[0], 0) : d[k - 1];
            IntMatrix next = k < d.size() ? d[k] : IntMatrix(0, dims[k]);
            groups_.push_back(compute(static_cast<int>(k), prev, next, dims[k]));
        }
    }

    int top_degree() const { return static_cast<int>(groups_.size()) - 1; }
    const CohomologyGroup& operator[](int k) const { return groups_.at(static_cast<std::size_t>(k)); }
    const std::vector<CohomologyGroup>& groups() const { return groups_; }

private:
    static CohomologyGroup compute(int k, const IntMatrix& prev, const IntMatrix& next, std::size_t n) {
        CohomologyGroup g;
        g.degree = k;
        g.cochain_dim = n;
        if (next.rows() > 0) g.next_ = to_rational(next);

        // Image of d_{k-1}: prev = U D V, image = span{d_i u_i}.
        auto snf_prev = smith_normal_form(prev);
        const std::size_t r = snf_prev.rank();
        g.U_inv_ = snf_prev.U_inv;
        g.prev_rank_ = r;
        for (std::size_t i = 0; i < r; ++i) {
            const Integer& di = snf_prev.D(i, i);
            if (di > 1) {
                g.torsion.push_back(di);
                g.torsion_slots_.push_back(i);
                g.torsion_reps.push_back(snf_prev.U.col(i));
            }
        }

        // Kernel of d_k restricted to the complementary columns of U.
        IntMatrix Urest(n, n - r);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = r; j < n; ++j) Urest(i, j - r) = snf_prev.U(i, j);
        IntMatrix B = next.rows() > 0 ? next * Urest : IntMatrix(0, n - r);
        auto snf_B = smith_normal_form(B);
        g.kernel_V_ = snf_B.V;
        g.kernel_rank_ = snf_B.rank();
        g.betti = (n - r) - g.kernel_rank_;
        for (std::size_t j = g.kernel_rank_; j < n - r; ++j)
            g.free_reps.push_back(Urest.apply(std::span<const Integer>(snf_B.V_inv.col(j))));

        g.free_change_ = IntMatrix::identity(g.betti);
        g.torsion_shift_ = IntMatrix(g.torsion.size(), g.betti);
        g.torsion_unit_inv_.assign(g.torsion.size(), Integer(1));

        canonicalize(g, next.rows() > 0 ? next : IntMatrix(0, n));
        return g;
    }

    // Replace generators by Hermite-basis cocycles when they form a valid
    // basis, so that monomial classes show up as monomials.
    static void canonicalize(CohomologyGroup& g, const IntMatrix& next) {
        const std::size_t n = g.cochain_dim;
        if (n == 0) return;
        auto kernel = next.rows() > 0 ? integer_kernel(next) : std::vector<IntVector>{};
        if (next.rows() == 0)
            for (std::size_t i = 0; i < n; ++i) {
                IntVector e(n, Integer(0));
                e[i] = 1;
                kernel.push_back(e);
            }
        if (kernel.empty()) return;
        auto candidates = hermite_normal_form(kernel, n);
        // Cocycles with a single nonzero entry first (monomials), then the rest.
        std::stable_sort(candidates.begin(), candidates.end(), [](const IntVector& a, const IntVector& b) {
            auto support = [](const IntVector& v) {
                std::size_t s = 0;
                for (const auto& x : v) s += (x != 0);
                return s;
            };
            return support(a) < support(b);
        });

        struct Raw {
            IntVector free, torsion;
        };
        std::vector<Raw> raw;
        for (const auto& c : candidates) {
            IntVector y = g.U_inv_.apply(std::span<const Integer>(c));
            Raw rc;
            for (std::size_t s = 0; s < g.torsion_slots_.size(); ++s)
                rc.torsion.push_back(mod_floor(y[g.torsion_slots_[s]], g.torsion[s]));
            rc.free = g.raw_free(y);
            raw.push_back(std::move(rc));
        }

        // Torsion: a candidate with zero free part and a single unit torsion entry.
        std::vector<IntVector> new_torsion_reps = g.torsion_reps;
        IntVector unit_inv(g.torsion.size(), Integer(1));
        for (std::size_t i = 0; i < g.torsion.size(); ++i) {
            std::optional<std::size_t> pick;
            Integer pick_unit;
            for (std::size_t c = 0; c < raw.size(); ++c) {
                bool ok = true;
                for (const auto& f : raw[c].free) ok = ok && f == 0;
                for (std::size_t j = 0; j < g.torsion.size() && ok; ++j)
                    if (j != i && raw[c].torsion[j] != 0) ok = false;
                const Integer& u = raw[c].torsion[i];
                if (!ok || u == 0 || gcd(u, g.torsion[i]) != 1) continue;
                if (!pick || (u == 1 && pick_unit != 1)) {
                    pick = c;
                    pick_unit = u;
                }
            }
            if (pick) {
                new_torsion_reps[i] = candidates[*pick];
                unit_inv[i] = modular_inverse(pick_unit, g.torsion[i]);
            }
        }

        // Free part: greedy primitive extension in candidate order.
        std::vector<std::size_t> chosen;
        if (g.betti > 0) {
            std::vector<IntVector> rows;
            for (std::size_t c = 0; c < raw.size() && chosen.size() < g.betti; ++c) {
                auto trial = rows;
                trial.push_back(raw[c].free);
                auto snf = smith_normal_form(IntMatrix::from_rows(trial, g.betti));
                bool primitive = snf.rank() == trial.size();
                for (std::size_t i = 0; i < snf.rank() && primitive; ++i) primitive = snf.D(i, i) == 1;
                if (primitive) {
                    rows = std::move(trial);
                    chosen.push_back(c);
                }
            }
            if (chosen.size() != g.betti) chosen.clear();
        }

        g.torsion_reps = std::move(new_torsion_reps);
        g.torsion_unit_inv_ = std::move(unit_inv);
        if (!chosen.empty()) {
            // Column l of C: raw free coordinates of the l-th new generator.
            IntMatrix C(g.betti, g.betti);
            IntMatrix S(g.torsion.size(), g.betti);
            std::vector<IntVector> reps;
            for (std::size_t l = 0; l < chosen.size(); ++l) {
                const auto& rc = raw[chosen[l]];
                for (std::size_t i = 0; i < g.betti; ++i) C(i, l) = rc.free[i];
                for (std::size_t i = 0; i < g.torsion.size(); ++i) S(i, l) = rc.torsion[i];
                reps.push_back(candidates[chosen[l]]);
            }
            RatMatrix Cinv = rational_inverse(to_rational(C));
            IntMatrix Ci(g.betti, g.betti);
            for (std::size_t i = 0; i < g.betti; ++i)
                for (std::size_t j = 0; j < g.betti; ++j) Ci(i, j) = numerator(Cinv(i, j));
            g.free_change_ = Ci;
            g.torsion_shift_ = S;
            g.free_reps = std::move(reps);
        }
    }

    static Integer modular_inverse(const Integer& u, const Integer& m) {
        // Extended Euclid on (u mod m, m).
        Integer a = mod_floor(u, m), b = m, x0 = 1, x1 = 0;
        while (b != 0) {
            Integer q = a / b;
            Integer t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        return mod_floor(x0, m);
    }

    std::vector<CohomologyGroup> groups_;
};

}  // namespace preqlat::cohom
