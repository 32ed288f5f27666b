#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace preqlat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown for malformed user input (rational strings, presets, flags).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Floor modulus, result in [0, |m|).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace detail {
inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}
}  // namespace detail

/// Parses "p", "-p" or "p/q" with decimal digits only.
inline Integer parse_integer(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!detail::all_digits(s)) throw InputError("malformed integer: '" + std::string(text) + "'");
    Integer v{std::string(s)};
    return negative ? Integer(-v) : v;
}

inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    std::string_view den = text.substr(slash + 1);
    if (!detail::all_digits(den))
        throw InputError("malformed rational: '" + std::string(text) + "'");
    Integer d(std::string{den});
    if (d == 0) throw InputError("zero denominator in rational: '" + std::string(text) + "'");
    return Rational(parse_integer(text.substr(0, slash)), d);
}

/// An exact scalar q * (2*pi)^d.  Zero is canonically stored with d = 0.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(Rational value, int pi_power = 0) : value_(std::move(value)), pi_power_(pi_power) {
        canonicalize();
    }
    ExactScalar(long long v) : ExactScalar(Rational(v)) {}

    const Rational& value() const { return value_; }
    int pi_power() const { return pi_power_; }
    bool is_zero() const { return value_ == 0; }

    double to_double() const {
        return static_cast<double>(value_) * std::pow(2.0 * std::numbers::pi, pi_power_);
    }

    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        return {a.value_ * b.value_, a.pi_power_ + b.pi_power_};
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        if (b.is_zero()) throw std::domain_error("ExactScalar division by zero");
        return {a.value_ / b.value_, a.pi_power_ - b.pi_power_};
    }
    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.pi_power_ != b.pi_power_)
            throw std::domain_error("cannot add exact scalars with different powers of 2*pi");
        return {a.value_ + b.value_, a.pi_power_};
    }
    friend ExactScalar operator-(const ExactScalar& a) { return {-a.value_, a.pi_power_}; }
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }
    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.value_ == b.value_ && a.pi_power_ == b.pi_power_;
    }

    /// "q*(2pi)^d", or just "q" when d = 0.
    std::string str() const {
        if (pi_power_ == 0) return to_string(value_);
        return to_string(value_) + "*(2pi)^" + std::to_string(pi_power_);
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.str(); }

private:
    void canonicalize() {
        if (value_ == 0) pi_power_ = 0;
    }

    Rational value_{0};
    int pi_power_ = 0;
};

/// {"num": "...", "den": "...", "pi_power": d} with decimal strings.
inline nlohmann::json exact_to_json(const ExactScalar& s) {
    return {{"num", numerator(s.value()).str()}, {"den", denominator(s.value()).str()}, {"pi_power", s.pi_power()}};
}

inline ExactScalar exact_from_json(const nlohmann::json& j) {
    Integer num = parse_integer(j.at("num").get<std::string>());
    Integer den = parse_integer(j.at("den").get<std::string>());
    if (den <= 0) throw InputError("exact scalar needs a positive denominator");
    return ExactScalar(Rational(num, den), j.at("pi_power").get<int>());
}

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace preqlat
