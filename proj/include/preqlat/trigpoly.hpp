#pragma once

#include "preqlat/exact.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace preqlat::torus {

inline constexpr int kMaxDim = 6;

/// Gaussian rational re + i*im.
struct Complex {
    Rational re{0};
    Rational im{0};

    bool is_zero() const { return re == 0 && im == 0; }
    Complex conj() const { return {re, -im}; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Rational& s, const Complex& a) { return {s * a.re, s * a.im}; }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend bool operator==(const Complex&, const Complex&) = default;

    /// i^k for any integer k.
    static Complex i_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {-1, 0};
            default: return {0, -1};
        }
    }
};

/// Frequency vector k in Z^m (unused trailing slots are zero).
using Mode = std::array<int, kMaxDim>;

/// Sample point or cycle offset: coordinates x_j = t_j * pi.  Exact evaluation
/// needs every t_j to be a multiple of 1/2.
using PiMultiples = std::vector<Rational>;

/// Finite Fourier series sum_k c_k exp(i k.x) on T^m with period 2*pi in each coordinate.
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(int dim) : dim_(dim) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("torus dimension out of range");
    }

    static TrigPoly constant(int dim, const Rational& c) {
        TrigPoly p(dim);
        p.add_term(Mode{}, {c, 0});
        return p;
    }
    /// a*cos(k.x) + b*sin(k.x)
    static TrigPoly wave(int dim, const Mode& k, const Rational& a, const Rational& b) {
        TrigPoly p(dim);
        Mode neg = negate(k);
        if (k == neg) {  // k = 0: cos = 1, sin = 0
            p.add_term(k, {a, 0});
            return p;
        }
        // cos = (e^{ikx} + e^{-ikx})/2, sin = (e^{ikx} - e^{-ikx})/(2i)
        p.add_term(k, {a / 2, -b / 2});
        p.add_term(neg, {a / 2, b / 2});
        return p;
    }
    static TrigPoly cos_axis(int dim, int axis, int n = 1, const Rational& amp = 1) {
        return wave(dim, unit_mode(axis, n), amp, 0);
    }
    static TrigPoly sin_axis(int dim, int axis, int n = 1, const Rational& amp = 1) {
        return wave(dim, unit_mode(axis, n), 0, amp);
    }

    int dim() const { return dim_; }
    const std::map<Mode, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Complex coefficient(const Mode& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Complex{} : it->second;
    }

    void add_term(const Mode& k, const Complex& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Constant Fourier mode, i.e. the mean over T^m.  Real for real polynomials.
    Rational mean() const {
        Complex c = coefficient(Mode{});
        if (c.im != 0) throw std::domain_error("constant mode is not real");
        return c.re;
    }

    bool is_real() const {
        for (const auto& [k, c] : terms_)
            if (coefficient(negate(k)) != c.conj()) return false;
        return true;
    }

    /// Largest |k_j| over all modes and axes.
    int degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_)
            for (int v : k) d = std::max(d, std::abs(v));
        return d;
    }

    bool depends_on(int axis) const {
        for (const auto& [k, c] : terms_)
            if (k[static_cast<std::size_t>(axis)] != 0) return true;
        return false;
    }

    TrigPoly partial(int axis) const {
        TrigPoly out(dim_);
        for (const auto& [k, c] : terms_) {
            const int kj = k[static_cast<std::size_t>(axis)];
            if (kj == 0) continue;
            // (re + i im) * (i kj)
            out.terms_.emplace(k, Complex{-Rational(kj) * c.im, Rational(kj) * c.re});
        }
        return out;
    }

    /// Substitutes x_axis = t*pi (t a multiple of 1/2); the axis drops out.
    TrigPoly restrict(int axis, const Rational& t) const {
        const long quarter = quarter_turns(t);
        TrigPoly out(dim_);
        for (const auto& [k, c] : terms_) {
            Mode k2 = k;
            const long kj = k[static_cast<std::size_t>(axis)];
            k2[static_cast<std::size_t>(axis)] = 0;
            out.add_term(k2, c * Complex::i_power(kj * quarter));
        }
        return out;
    }

    /// Exact value at x = t*pi; every t_j must be a multiple of 1/2.
    Rational evaluate_exact(const PiMultiples& t) const {
        if (static_cast<int>(t.size()) != dim_) throw std::invalid_argument("point has wrong dimension");
        std::vector<long> q;
        for (const auto& tj : t) q.push_back(quarter_turns(tj));
        Complex sum;
        for (const auto& [k, c] : terms_) {
            long e = 0;
            for (int j = 0; j < dim_; ++j) e += static_cast<long>(k[static_cast<std::size_t>(j)]) * q[static_cast<std::size_t>(j)];
            sum += c * Complex::i_power(e);
        }
        if (sum.im != 0) throw std::domain_error("value is not real");
        return sum.re;
    }

    double evaluate(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("point has wrong dimension");
        std::complex<double> sum = 0;
        for (const auto& [k, c] : terms_) {
            double phase = 0;
            for (int j = 0; j < dim_; ++j) phase += k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            sum += std::complex<double>(static_cast<double>(c.re), static_cast<double>(c.im)) *
                   std::polar(1.0, phase);
        }
        return sum.real();
    }

    TrigPoly& operator+=(const TrigPoly& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    TrigPoly& operator-=(const TrigPoly& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator-(const TrigPoly& a) { return Rational(-1) * a; }
    friend TrigPoly operator*(const Rational& s, const TrigPoly& a) {
        TrigPoly out(a.dim_);
        if (s == 0) return out;
        for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, s * c);
        return out;
    }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
        a.check(b);
        TrigPoly out(a.dim_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Mode k;
                for (std::size_t j = 0; j < kMaxDim; ++j) k[j] = ka[j] + kb[j];
                out.add_term(k, ca * cb);
            }
        return out;
    }
    TrigPoly& operator*=(const TrigPoly& o) { return *this = *this * o; }
    friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    static Mode negate(const Mode& k) {
        Mode n;
        for (std::size_t j = 0; j < kMaxDim; ++j) n[j] = -k[j];
        return n;
    }
    static Mode unit_mode(int axis, int n = 1) {
        Mode k{};
        k.at(static_cast<std::size_t>(axis)) = n;
        return k;
    }

    /// Real form as [{"k": [...], "cos": "a", "sin": "b"}] with one entry per +-k pair.
    nlohmann::json to_json() const {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& [k, c] : terms_) {
            Mode neg = negate(k);
            if (k < neg) continue;
            nlohmann::json kv = nlohmann::json::array();
            for (int j = 0; j < dim_; ++j) kv.push_back(k[static_cast<std::size_t>(j)]);
            Rational a, b;
            if (neg == k) {
                a = c.re;
            } else {
                // c_k = (a - i b)/2
                a = 2 * c.re;
                b = -2 * c.im;
            }
            nlohmann::json term = {{"k", kv}, {"cos", preqlat::to_string(a)}, {"sin", preqlat::to_string(b)}};
            if (!is_real()) term["im_k"] = preqlat::to_string(c.im);
            out.push_back(term);
        }
        return out;
    }

    static TrigPoly from_json(int dim, const nlohmann::json& j) {
        TrigPoly p(dim);
        for (const auto& term : j) {
            Mode k{};
            const auto& kv = term.at("k");
            if (static_cast<int>(kv.size()) != dim) throw InputError("mode vector has wrong length");
            for (int i = 0; i < dim; ++i) k[static_cast<std::size_t>(i)] = kv.at(static_cast<std::size_t>(i)).get<int>();
            p += wave(dim, k, parse_rational(term.value("cos", "0")), parse_rational(term.value("sin", "0")));
        }
        return p;
    }

private:
    static long quarter_turns(const Rational& t) {
        Rational twice = 2 * t;
        if (!is_integer(twice))
            throw std::domain_error("point is not exactly evaluable: coordinate " + preqlat::to_string(t) +
                                    "*pi is not a multiple of pi/2");
        return static_cast<long>(numerator(twice) % 4);
    }

    void check(const TrigPoly& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("trig polynomials on different tori");
    }

    int dim_ = 1;
    std::map<Mode, Complex> terms_;
};

}  // namespace preqlat::torus
