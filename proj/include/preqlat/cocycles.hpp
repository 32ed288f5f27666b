#pragma once

#include "preqlat/contact.hpp"
#include "preqlat/symplectic.hpp"
#include "preqlat/volume.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace preqlat::torus {

enum class CocycleKind { roger, singular, sigma_Q, lichnerowicz_Q, lichnerowicz_eta, ks };

inline constexpr CocycleKind kAllCocycleKinds[] = {CocycleKind::roger,          CocycleKind::singular,
                                                   CocycleKind::sigma_Q,        CocycleKind::lichnerowicz_Q,
                                                   CocycleKind::lichnerowicz_eta, CocycleKind::ks};

inline std::string to_string(CocycleKind k) {
    switch (k) {
        case CocycleKind::roger: return "roger";
        case CocycleKind::singular: return "singular";
        case CocycleKind::sigma_Q: return "sigma_Q";
        case CocycleKind::lichnerowicz_Q: return "lichnerowicz_Q";
        case CocycleKind::lichnerowicz_eta: return "lichnerowicz_eta";
        case CocycleKind::ks: return "KS";
    }
    return "?";
}

inline CocycleKind parse_cocycle_kind(std::string_view s) {
    for (auto k : kAllCocycleKinds)
        if (to_string(k) == s) return k;
    throw InputError("unknown cocycle kind '" + std::string(s) + "'");
}

inline bool acts_on_fields(CocycleKind k) {
    return k == CocycleKind::lichnerowicz_Q || k == CocycleKind::lichnerowicz_eta;
}

/// Whatever a given kind needs; unused members stay empty.
struct CocycleParams {
    std::optional<ConstantSymplectic> omega;  ///< roger, singular, KS
    ScaledForm alpha;                         ///< roger
    CoordinateCycle cycle;                    ///< singular, sigma_Q, lichnerowicz_Q
    ScaledForm eta;                           ///< lichnerowicz_eta
    ScaledForm nu;                            ///< Lichnerowicz kinds
    PiMultiples x0;                           ///< KS
};

/// (delta psi)(a, b, c) = -psi([a,b], c) + psi([a,c], b) - psi([b,c], a)
template <class T, class Bracket, class Psi>
ExactScalar ce_residual(const T& a, const T& b, const T& c, Bracket br, Psi psi) {
    return -psi(br(a, b), c) + psi(br(a, c), b) - psi(br(b, c), a);
}

inline const ConstantSymplectic& require_omega(const CocycleParams& p) {
    if (!p.omega) throw std::invalid_argument("cocycle needs a symplectic form");
    return *p.omega;
}

inline ExactScalar evaluate_cocycle(CocycleKind kind, const CocycleParams& p, const TrigPoly& f, const TrigPoly& g) {
    switch (kind) {
        case CocycleKind::roger: return roger_cocycle(p.alpha, f, g, require_omega(p));
        case CocycleKind::singular: return singular_cocycle(p.cycle, f, g, require_omega(p));
        case CocycleKind::sigma_Q: return contact::sigma(p.cycle, f, g);
        case CocycleKind::ks: return ExactScalar(ks_cocycle(f, g, require_omega(p), p.x0));
        default: throw std::invalid_argument(to_string(kind) + " acts on vector fields");
    }
}

inline ExactScalar evaluate_cocycle(CocycleKind kind, const CocycleParams& p, const TorusVectorField& X,
                                    const TorusVectorField& Y) {
    switch (kind) {
        case CocycleKind::lichnerowicz_Q: return lichnerowicz_singular(p.cycle, X, Y, p.nu);
        case CocycleKind::lichnerowicz_eta: return lichnerowicz_eta(p.eta, X, Y, p.nu);
        default: throw std::invalid_argument(to_string(kind) + " acts on functions");
    }
}

/// Bracket on functions: Poisson for symplectic kinds, contact bracket for sigma_Q.
inline TrigPoly function_bracket(CocycleKind kind, const CocycleParams& p, const TrigPoly& f, const TrigPoly& g) {
    if (kind == CocycleKind::sigma_Q) return contact::contact_bracket(f, g);
    return require_omega(p).poisson_bracket(f, g);
}

inline ExactScalar cocycle_residual(CocycleKind kind, const CocycleParams& p, const TrigPoly& f, const TrigPoly& g,
                                    const TrigPoly& h) {
    return ce_residual(
        f, g, h, [&](const TrigPoly& a, const TrigPoly& b) { return function_bracket(kind, p, a, b); },
        [&](const TrigPoly& a, const TrigPoly& b) { return evaluate_cocycle(kind, p, a, b); });
}

inline ExactScalar cocycle_residual(CocycleKind kind, const CocycleParams& p, const TorusVectorField& X,
                                    const TorusVectorField& Y, const TorusVectorField& Z) {
    return ce_residual(
        X, Y, Z, [](const TorusVectorField& a, const TorusVectorField& b) { return bracket(a, b); },
        [&](const TorusVectorField& a, const TorusVectorField& b) { return evaluate_cocycle(kind, p, a, b); });
}

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}
inline TrigPoly jacobi_residual(const ConstantSymplectic& w, const TrigPoly& f, const TrigPoly& g, const TrigPoly& h) {
    return w.poisson_bracket(f, w.poisson_bracket(g, h)) + w.poisson_bracket(g, w.poisson_bracket(h, f)) +
           w.poisson_bracket(h, w.poisson_bracket(f, g));
}

}  // namespace preqlat::torus
