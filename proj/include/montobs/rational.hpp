#pragma once

// Exact scalar arithmetic: arbitrary-precision integers and reduced
// rationals with positive denominator.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace montobs {

using Int = mpz_class;

struct ZeroDenominator : std::domain_error {
    ZeroDenominator() : std::domain_error("zero denominator") {}
};

inline Int int_from(std::int64_t v) {
    // mpz_class has no int64 constructor on LLP64-safe paths; go through long.
    return Int(static_cast<long>(v));
}

inline std::int64_t to_int64(const Int& v) {
    if (!v.fits_slong_p())
        throw std::overflow_error("integer out of 64-bit range: " + v.get_str());
    return static_cast<std::int64_t>(v.get_si());
}

// Invariants: denominator > 0, gcd(numerator, denominator) == 1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(const Int& n) : v_(n) {}          // NOLINT: implicit by design
    Rational(std::int64_t n) : v_(static_cast<long>(n)) {}
    Rational(int n) : v_(n) {}
    Rational(const Int& n, const Int& d) {
        if (d == 0) throw ZeroDenominator();
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    Rational(std::int64_t n, std::int64_t d)
        : Rational(int_from(n), int_from(d)) {}

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    // Largest integer <= *this.
    Int floor() const {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    Rational reciprocal() const {
        if (v_ == 0) throw ZeroDenominator();
        return Rational(den(), num());
    }

    std::string str() const { return num().get_str() + "/" + den().get_str(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.v_ == 0) throw ZeroDenominator();
        return Rational(a.v_ / b.v_);
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;   // kept canonical at all times
};

}  // namespace montobs
