#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nilfold {

using Integer = mpz_class;

// Exact rational scalar. Stored canonically: lowest terms, denominator > 0.
// Thin value wrapper over GMP's mpq so the rest of the library never touches
// raw mpq_t and parsing/printing stays in one place.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& n) : v_(n) {}
  Rational(long num, long den);
  Rational(const Integer& num, const Integer& den);

  static Rational parse(const std::string& text);

  const Integer numerator() const { return v_.get_num(); }
  const Integer denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational abs() const;
  // Largest integer <= value.
  Integer floor() const;
  // value - floor(value), in [0,1).
  Rational frac() const;

  double to_double() const { return v_.get_d(); }
  // "p/q", or just "p" when the denominator is 1.
  std::string str() const { return v_.get_str(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

// Integer power, e >= 0.
Rational pow(const Rational& base, unsigned long e);
Integer pow(const Integer& base, unsigned long e);

// Parses a base-10 integer, rejecting anything else.
Integer parse_integer(const std::string& text);

}  // namespace nilfold
