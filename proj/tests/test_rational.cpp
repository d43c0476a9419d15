#include "nilfold/rational.hpp"

#include "doctest.h"
#include "nilfold/errors.hpp"

using namespace nilfold;

TEST_CASE("rationals canonicalize to lowest terms with positive denominator") {
  Rational r(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r.str() == "-3/2");
  CHECK(Rational(4, 2).str() == "2");
}

TEST_CASE("parse accepts p/q and integers, rejects junk") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("-2/-4") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("a/2"), Error);
  CHECK_THROWS_AS(Rational::parse("1.5"), Error);
  CHECK_THROWS_AS(Rational::parse(""), Error);
}

TEST_CASE("floor and frac behave on negatives") {
  CHECK(Rational(-1, 4).floor() == -1);
  CHECK(Rational(-1, 4).frac() == Rational(3, 4));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).frac() == Rational(1, 2));
  CHECK(Rational(0).frac() == Rational(0));
}

TEST_CASE("arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK_THROWS_AS(a / Rational(0), Error);
}
