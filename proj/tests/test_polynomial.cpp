#include "nilfold/polynomial.hpp"

#include "doctest.h"
#include "nilfold/errors.hpp"

using namespace nilfold;

namespace {

Polynomial s1t2() {
  Polynomial p(st_vars(2));
  p.add_term({1, 0, 0, 1}, Rational(1));
  return p;
}

}  // namespace

TEST_CASE("terms merge and zero coefficients vanish") {
  Polynomial p(st_vars(1));
  p.add_term({1, 1}, Rational(1, 2));
  p.add_term({1, 1}, Rational(1, 2));
  CHECK(p.terms().size() == 1);
  p.add_term({1, 1}, Rational(-1));
  CHECK(p.is_zero());
}

TEST_CASE("evaluation is exact") {
  Polynomial p = s1t2();
  std::vector<Rational> point{Rational(3, 2), Rational(5), Rational(0), Rational(1, 3)};
  CHECK(p.eval(point) == Rational(1, 2));
  std::vector<Rational> bad{Rational(1)};
  CHECK_THROWS_AS(p.eval(bad), Error);
}

TEST_CASE("degrees: total and per block") {
  Polynomial p(st_vars(3));
  p.add_term({2, 0, 0, 0, 1, 0}, Rational(1, 2));  // s1^2 t2
  p.add_term({1, 0, 0, 0, 0, 1}, Rational(1));     // s1 t3
  CHECK(p.total_degree() == 3);
  CHECK(p.degree_in(0, 3) == 2);  // s block
  CHECK(p.degree_in(3, 3) == 1);  // t block
  CHECK(Polynomial(st_vars(1)).total_degree() == 0);
}

TEST_CASE("substitution composes polynomials") {
  // p(x) = x^2 + 1 composed with q(x) = x + 2 -> x^2 + 4x + 5
  auto xs = x_vars(1);
  Polynomial p(xs);
  p.add_term({2}, Rational(1));
  p.add_term({0}, Rational(1));
  Polynomial q(xs);
  q.add_term({1}, Rational(1));
  q.add_term({0}, Rational(2));
  std::vector<Polynomial> args{q};
  Polynomial composed = p.substitute(args);
  std::vector<Rational> at{Rational(3)};
  CHECK(composed.eval(at) == Rational(26));
  CHECK(composed.total_degree() == 2);
}

TEST_CASE("spec-format round trip is bit exact") {
  Polynomial p(st_vars(2));
  p.add_term({1, 0, 0, 1}, Rational(1));
  p.add_term({0, 1, 1, 0}, Rational(-2, 3));
  p.add_term({2, 0, 0, 0}, Rational(0));  // dropped
  std::string text = p.str();
  Polynomial back = Polynomial::parse(text, st_vars(2));
  CHECK(back == p);
  CHECK(back.str() == text);
  CHECK(Polynomial::parse("0", st_vars(1)).is_zero());
  CHECK_THROWS_AS(Polynomial::parse("1:bogus", st_vars(1)), Error);
}

TEST_CASE("coefficient magnitude sum") {
  Polynomial p(x_vars(2));
  p.add_term({1, 0}, Rational(-3, 2));
  p.add_term({0, 2}, Rational(1, 4));
  CHECK(p.coeff_abs_sum() == Rational(7, 4));
}
