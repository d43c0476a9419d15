#include "nilfold/rational.hpp"

#include <cctype>
#include <ostream>

#include "nilfold/errors.hpp"

namespace nilfold {

namespace {

bool valid_decimal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) raise(Errc::ParseError, "rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const Integer& num, const Integer& den) : v_(num, den) {
  if (sgn(den) == 0) raise(Errc::ParseError, "rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_decimal(text)) raise(Errc::ParseError, "bad rational: '" + text + "'");
    return Rational(Integer(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!valid_decimal(num) || !valid_decimal(den))
    raise(Errc::ParseError, "bad rational: '" + text + "'");
  Integer d(den);
  if (sgn(d) == 0) raise(Errc::ParseError, "bad rational (zero denominator): '" + text + "'");
  return Rational(Integer(num), d);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) raise(Errc::ParseError, "rational division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) raise(Errc::ParseError, "rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Integer Rational::floor() const {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned long e) {
  Rational acc(1);
  Rational b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

Integer pow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Integer parse_integer(const std::string& text) {
  if (!valid_decimal(text)) raise(Errc::ParseError, "bad integer: '" + text + "'");
  return Integer(text);
}

}  // namespace nilfold
