#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace pillowfloer {

// Small exact rational on int64 with overflow checks; enough for the 2-bridge
// lattice geometry and the Seifert-form diagonalization.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::overflow_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational overflow");
    return r;
  }
  static long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational overflow");
    return r;
  }

  Rational operator+(const Rational& o) const {
    return Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                    checked_mul(den, o.den));
  }
  Rational operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }
  Rational operator*(const Rational& o) const {
    return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::overflow_error("Rational division by zero");
    return Rational(checked_mul(num, o.den), checked_mul(den, o.num));
  }
  Rational operator-() const { return Rational(-num, den); }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const {
    return checked_mul(num, o.den) < checked_mul(o.num, den);
  }
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  long long floor_ll() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }
};

}  // namespace pillowfloer
