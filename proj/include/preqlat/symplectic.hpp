#pragma once

#include "preqlat/forms.hpp"
#include "preqlat/matrix.hpp"

#include <stdexcept>
#include <vector>

/// Constant-coefficient symplectic tori T^2n and the 2-cocycles of their Poisson algebras.
namespace preqlat::torus {

class ConstantSymplectic {
public:
    /// omega = sum_{i<j} W_ij dx_i ^ dx_j with W antisymmetric and invertible.
    explicit ConstantSymplectic(RatMatrix W) : W_(std::move(W)) {
        const std::size_t m = W_.rows();
        if (m != W_.cols() || m == 0 || m % 2 != 0 || static_cast<int>(m) > kMaxDim)
            throw std::invalid_argument("symplectic matrix must be square of even size");
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (W_(i, j) != -W_(j, i)) throw std::invalid_argument("symplectic matrix is not antisymmetric");
        if (rational_rank(W_) != m) throw std::invalid_argument("symplectic form is degenerate");
        W_inv_ = rational_inverse(W_);
    }

    /// scale * sum_i dx_i ^ dy_i in coordinates (x1, y1, ..., xn, yn).
    static ConstantSymplectic standard(int n, const Rational& scale = 1) {
        if (n < 1) throw std::invalid_argument("n must be positive");
        const auto m = static_cast<std::size_t>(2 * n);
        RatMatrix W(m, m);
        for (std::size_t i = 0; i < m; i += 2) {
            W(i, i + 1) = scale;
            W(i + 1, i) = -scale;
        }
        return ConstantSymplectic(W);
    }

    static ConstantSymplectic from_form(const TorusForm& omega) {
        if (omega.degree() != 2) throw std::invalid_argument("symplectic form must have degree 2");
        const auto m = static_cast<std::size_t>(omega.dim());
        RatMatrix W(m, m);
        for (const auto& [I, f] : omega.terms()) {
            if (f.degree() != 0) throw std::invalid_argument("symplectic form must have constant coefficients");
            W(static_cast<std::size_t>(I[0]), static_cast<std::size_t>(I[1])) = f.mean();
            W(static_cast<std::size_t>(I[1]), static_cast<std::size_t>(I[0])) = -f.mean();
        }
        return ConstantSymplectic(W);
    }

    int dim() const { return static_cast<int>(W_.rows()); }
    int n() const { return dim() / 2; }
    const RatMatrix& matrix() const { return W_; }

    TorusForm form() const {
        TorusForm out(dim(), 2);
        for (int i = 0; i < dim(); ++i)
            for (int j = i + 1; j < dim(); ++j) {
                const auto& w = W_(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                if (w != 0) out.add({i, j}, TrigPoly::constant(dim(), w));
            }
        return out;
    }

    /// omega^k / k!
    TorusForm power_over_factorial(int k) const {
        TorusForm acc = TorusForm::function(TrigPoly::constant(dim(), 1));
        const TorusForm w = form();
        for (int i = 1; i <= k; ++i) acc = Rational(1, i) * wedge(acc, w);
        return acc;
    }
    TorusForm liouville() const { return power_over_factorial(n()); }

    /// X_f with i_{X_f} omega = -df, i.e. X_f = W^{-1} grad f.
    TorusVectorField hamiltonian_field(const TrigPoly& f) const {
        check(f);
        std::vector<TrigPoly> grad;
        for (int j = 0; j < dim(); ++j) grad.push_back(f.partial(j));
        TorusVectorField X(dim());
        for (std::size_t i = 0; i < W_inv_.rows(); ++i)
            for (std::size_t j = 0; j < W_inv_.cols(); ++j)
                if (W_inv_(i, j) != 0) X[static_cast<int>(i)] += W_inv_(i, j) * grad[j];
        return X;
    }

    /// omega(X, Y) = sum_ij X^i W_ij Y^j
    TrigPoly pair(const TorusVectorField& X, const TorusVectorField& Y) const {
        TrigPoly out(dim());
        for (std::size_t i = 0; i < W_.rows(); ++i) {
            if (X[static_cast<int>(i)].is_zero()) continue;
            TrigPoly row(dim());
            for (std::size_t j = 0; j < W_.cols(); ++j)
                if (W_(i, j) != 0) row += W_(i, j) * Y[static_cast<int>(j)];
            out += X[static_cast<int>(i)] * row;
        }
        return out;
    }

    /// {f, g} = omega(X_f, X_g)
    TrigPoly poisson_bracket(const TrigPoly& f, const TrigPoly& g) const {
        return pair(hamiltonian_field(f), hamiltonian_field(g));
    }

    /// Total volume of omega^n / n!.
    ExactScalar volume() const { return integrate(liouville()); }

private:
    void check(const TrigPoly& f) const {
        if (f.dim() != dim()) throw std::invalid_argument("function lives on a different torus");
    }

    RatMatrix W_;
    RatMatrix W_inv_;
};

/// psi_KS(f, g) = {f, g}(x0), exact at points that are multiples of pi/2.
inline Rational ks_cocycle(const TrigPoly& f, const TrigPoly& g, const ConstantSymplectic& w, const PiMultiples& x0) {
    return w.poisson_bracket(f, g).evaluate_exact(x0);
}

inline void require_closed(const TorusForm& a, const char* what) {
    if (a.degree() < a.dim() && !exterior_derivative(a).is_zero())
        throw std::invalid_argument(std::string(what) + " is not closed");
}

/// psi_alpha(f, g) = int_M f alpha(X_g) omega^n/n! for a closed 1-form alpha.
inline ExactScalar roger_cocycle(const ScaledForm& alpha, const TrigPoly& f, const TrigPoly& g,
                                 const ConstantSymplectic& w) {
    if (alpha.form.degree() != 1) throw std::invalid_argument("alpha must be a 1-form");
    require_closed(alpha.form, "alpha");
    TrigPoly a_of_X = contract(w.hamiltonian_field(g), alpha.form).coefficient({});
    return alpha.scale * integrate((f * a_of_X) * w.liouville());
}

inline ExactScalar roger_cocycle(const TorusForm& alpha, const TrigPoly& f, const TrigPoly& g,
                                 const ConstantSymplectic& w) {
    return roger_cocycle(ScaledForm{alpha}, f, g, w);
}

/// psi_C(f, g) = int_C g df ^ omega^{n-1}/(n-1)! for a (2n-1)-cycle C.
inline ExactScalar singular_cocycle(const CoordinateCycle& C, const TrigPoly& f, const TrigPoly& g,
                                    const ConstantSymplectic& w) {
    if (C.dim() != w.dim() - 1) throw std::invalid_argument("cycle must have dimension 2n-1");
    TorusForm integrand = wedge(g * exterior_derivative(TorusForm::function(f)), w.power_over_factorial(w.n() - 1));
    return integrate_over_cycle(integrand, C);
}

/// Closed 1-form alpha with int_C gamma = int_M alpha ^ gamma for a coordinate
/// hypersurface C; alpha = +-dx_j/(2pi), j the missing axis.
inline ScaledForm poincare_dual_1form(const CoordinateCycle& C, int torus_dim) {
    C.validate(torus_dim);
    if (C.dim() != torus_dim - 1) throw std::invalid_argument("cycle must have codimension one");
    int missing = 0;
    while (std::find(C.axes.begin(), C.axes.end(), missing) != C.axes.end()) ++missing;
    TorusForm dx = TorusForm::dx(torus_dim, missing);
    Monomial sorted = C.axes;
    TorusForm::sort_with_sign(sorted);
    TorusForm gamma = TorusForm::constant(torus_dim, sorted);
    // fix the sign by pairing against one basis form
    ExactScalar lhs = integrate_over_cycle(gamma, C);
    ExactScalar rhs = ExactScalar(Rational(1), -1) * integrate(wedge(dx, gamma));
    return {lhs == rhs ? dx : -dx, ExactScalar(Rational(1), -1)};
}

/// rho(f) = (1/vol) int_M f omega^n/n!
inline Rational rho(const TrigPoly& f, const ConstantSymplectic& w) {
    ExactScalar vol = w.volume();
    ExactScalar total = integrate(f * w.liouville());
    return (total / vol).value();
}

/// kappa(X_f) = f - rho(f): the mean-zero Hamiltonian of X_f.
inline TrigPoly kappa(const TrigPoly& f, const ConstantSymplectic& w) {
    return f - TrigPoly::constant(f.dim(), rho(f, w));
}

inline ExactScalar kappa_pullback_roger(const ScaledForm& alpha, const TrigPoly& f, const TrigPoly& g,
                                        const ConstantSymplectic& w) {
    return roger_cocycle(alpha, kappa(f, w), kappa(g, w), w);
}

inline ExactScalar kappa_pullback_singular(const CoordinateCycle& C, const TrigPoly& f, const TrigPoly& g,
                                           const ConstantSymplectic& w) {
    return singular_cocycle(C, kappa(f, w), kappa(g, w), w);
}

}  // namespace preqlat::torus
