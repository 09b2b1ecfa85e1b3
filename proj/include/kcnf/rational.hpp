#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kcnf {

// Exact rational arithmetic for the threshold quantities (eta, delta, alpha).
// Comparisons go through 128-bit intermediates so boundary cases never drift.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool is_zero() const { return num == 0; }
    bool positive() const { return num > 0; }

    // Largest integer <= value.
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    // Smallest integer >= value.
    long long ceil() const {
        long long q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::invalid_argument("Rational: divide by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Best rational approximation with denominator <= max_den (continued fractions).
    static Rational from_double(double x, long long max_den = 1LL << 31) {
        if (!std::isfinite(x)) throw std::invalid_argument("Rational::from_double: non-finite");
        bool negate = x < 0;
        if (negate) x = -x;
        long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double v = x;
        for (int iter = 0; iter < 64; ++iter) {
            double fl = std::floor(v);
            if (fl > 9e18) break;
            long long a = static_cast<long long>(fl);
            if (q1 != 0 && a > (max_den - q0) / q1) break;
            long long p2 = a * p1 + p0;
            long long q2 = a * q1 + q0;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
            double frac = v - fl;
            if (frac < 1e-15) break;
            v = 1.0 / frac;
        }
        if (q1 == 0) return Rational(0, 1);
        Rational r(negate ? -p1 : p1, q1);
        return r;
    }
};

}  // namespace kcnf
