#include "nilfold/group.hpp"

#include "doctest.h"
#include "nilfold/errors.hpp"
#include "support/oracles.hpp"

using namespace nilfold;
using namespace nilfold::testing;

namespace {

GroupElement elem(const ValidatedSpec& spec, std::initializer_list<Rational> coords) {
  return make_element(spec, std::vector<Rational>(coords));
}

}  // namespace

TEST_CASE("validate_spec accepts the registered specs and rejects bad ones") {
  CHECK(heisenberg_spec()->id == "heisenberg");
  CHECK(abelian_spec(2)->k == 1);
  CHECK(filiform4_spec()->m == 4);

  // P_1 = s1*t1 + 1 breaks the identity axiom (k = 3 keeps degrees legal)
  NilGroupSpec bad;
  bad.id = "bad";
  bad.m = 2;
  bad.k = 3;
  Polynomial p1(st_vars(1));
  p1.add_term({1, 1}, Rational(1));
  p1.add_term({0, 0}, Rational(1));
  bad.structure_polys.push_back(p1);
  CHECK_THROWS_WITH_AS(validate_spec(bad), doctest::Contains("identity axiom"), Error);

  // degree k without the override flag
  NilGroupSpec deg;
  deg.id = "deg";
  deg.m = 3;
  deg.k = 2;
  deg.structure_polys.push_back(Polynomial(st_vars(1)));
  Polynomial p2(st_vars(2));
  p2.add_term({1, 0, 0, 1}, Rational(1));
  deg.structure_polys.push_back(p2);
  CHECK_THROWS_AS(validate_spec(deg), Error);
  deg.allow_degree_k = true;
  CHECK_NOTHROW(validate_spec(deg));
}

TEST_CASE("heisenberg multiplication matches the worked examples") {
  auto spec = heisenberg_spec();
  CHECK(multiply(spec, elem(spec, {1, 0, 0}), elem(spec, {0, 1, 0})) == elem(spec, {1, 1, 1}));
  CHECK(multiply(spec, elem(spec, {0, 1, 0}), elem(spec, {1, 0, 0})) == elem(spec, {1, 1, 0}));
  DetRng rng(7);
  for (int i = 0; i < 50; ++i) {
    GroupElement t = random_element(rng, spec);
    CHECK(multiply(spec, identity(spec), t) == t);
    CHECK(multiply(spec, t, identity(spec)) == t);
  }
}

TEST_CASE("registered nonabelian specs agree with their matrix models") {
  for (const auto& spec : {heisenberg_spec(), filiform4_spec()}) {
    DetRng rng(11);
    for (int i = 0; i < 200; ++i) {
      GroupElement a = random_element(rng, spec);
      GroupElement b = random_element(rng, spec);
      CHECK(multiply(spec, a, b) == matrix_model_multiply(spec->id, a, b));
    }
  }
}

TEST_CASE("associativity, identity, inverse hold exactly") {
  for (const auto& spec :
       {abelian_spec(1), abelian_spec(3), heisenberg_spec(), filiform4_spec()}) {
    DetRng rng(3);
    for (int i = 0; i < 300; ++i) {
      GroupElement a = random_element(rng, spec);
      GroupElement b = random_element(rng, spec);
      GroupElement c = random_element(rng, spec);
      CHECK(multiply(spec, multiply(spec, a, b), c) == multiply(spec, a, multiply(spec, b, c)));
      GroupElement inv = inverse(spec, a);
      CHECK(multiply(spec, a, inv) == identity(spec));
      CHECK(multiply(spec, inv, a) == identity(spec));
    }
  }
}

TEST_CASE("inverse worked examples") {
  auto h = heisenberg_spec();
  CHECK(inverse(h, elem(h, {1, 1, 0})) == elem(h, {-1, -1, 1}));
  CHECK(inverse(h, identity(h)) == identity(h));
  auto a2 = abelian_spec(2);
  CHECK(inverse(a2, elem(a2, {Rational(2, 3), Rational(-5)})) ==
        elem(a2, {Rational(-2, 3), Rational(5)}));
}

TEST_CASE("power routes agree: iterated, closed recursion, binary") {
  for (const auto& spec : {abelian_spec(2), heisenberg_spec(), filiform4_spec()}) {
    DetRng rng(13);
    for (int i = 0; i < 40; ++i) {
      GroupElement x = random_element(rng, spec, 6, 4);
      GroupElement by_iter = identity(spec);
      for (unsigned long n = 1; n <= 64; ++n) {
        by_iter = multiply(spec, by_iter, x);
        CHECK(power_closed(spec, x, n) == by_iter);
        CHECK(power(spec, x, Integer(static_cast<unsigned long>(n))) == by_iter);
      }
    }
  }
  auto h = heisenberg_spec();
  CHECK(power_iter(h, elem(h, {1, 1, 0}), 2) == elem(h, {2, 2, 1}));
  CHECK(power_closed(h, elem(h, {1, 1, 0}), 3) == elem(h, {3, 3, 3}));
  CHECK(power_iter(h, elem(h, {1, 1, 0}), 0) == identity(h));
  CHECK(power_closed(h, elem(h, {1, 1, 0}), 1) == elem(h, {1, 1, 0}));
}

TEST_CASE("negative powers go through the inverse") {
  auto h = heisenberg_spec();
  GroupElement g = elem(h, {Rational(1, 2), Rational(1, 3), Rational(2)});
  GroupElement p3 = power(h, g, Integer(3));
  CHECK(multiply(h, p3, power(h, g, Integer(-3))) == identity(h));
}

TEST_CASE("heisenberg closed form g^n = (na, nb, nc + C(n,2) ab)") {
  auto h = heisenberg_spec();
  DetRng rng(17);
  for (int i = 0; i < 5; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    GroupElement g = elem(h, {a, b, c});
    GroupElement acc = identity(h);
    for (long n = 1; n <= 200; ++n) {
      acc = multiply(h, acc, g);
      Rational nn(n);
      Rational binom = Rational(n) * Rational(n - 1) / Rational(2);
      CHECK(acc == elem(h, {nn * a, nn * b, nn * c + binom * a * b}));
    }
  }
}

TEST_CASE("coeff_bound builds the majorant chain") {
  // abelian: S(x) = x, so R(n) = n
  CHECK(coeff_bound(abelian_spec(3), 17) == Rational(17));
  CHECK(coeff_bound(abelian_spec(1), 9) == Rational(9));
  // heisenberg: P(1,1,x,x) = x, S(x) = x^2, R(n) = n^4
  auto h = heisenberg_spec();
  CHECK(coeff_bound(h, 1) == Rational(1));
  CHECK(coeff_bound(h, 3) == Rational(81));
  CHECK(majorant_bound_poly(h).total_degree() == 4);
  CHECK(coeff_bound(h, 50) >= Rational(1));
}

TEST_CASE("symbolic power coefficients stay within coeff_bound") {
  auto h = heisenberg_spec();
  auto q = symbolic_powers(h, 50);
  Integer km = pow(Integer(h->k), static_cast<unsigned long>(h->m));
  for (unsigned long n = 1; n <= 50; ++n) {
    Rational bound = coeff_bound(h, n);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(q[n][i].coeff_abs_sum() <= bound);
      CHECK(Integer(q[n][i].total_degree()) < km);  // degree < k^m
    }
  }
  // the symbolic route equals the numeric routes where it is cheap
  DetRng rng(23);
  for (int i = 0; i < 10; ++i) {
    GroupElement x = random_element(rng, h, 5, 3);
    GroupElement direct = power_iter(h, x, 12);
    for (std::size_t c = 0; c < 3; ++c)
      CHECK(q[12][c].eval(x.coords) == direct.coords[c]);
  }
}

TEST_CASE("filiform coefficient bounds hold as well") {
  auto f = filiform4_spec();
  auto q = symbolic_powers(f, 20);
  for (unsigned long n = 1; n <= 20; ++n) {
    Rational bound = coeff_bound(f, n);
    for (std::size_t i = 0; i < 4; ++i) CHECK(q[n][i].coeff_abs_sum() <= bound);
  }
}

TEST_CASE("growth exponents") {
  auto g1 = z_growth_exponents(abelian_spec(1));
  CHECK(g1.c1 == 1);
  CHECK(g1.c2 == 1);
  auto gh = z_growth_exponents(heisenberg_spec());
  CHECK(gh.c1 == 4);  // k^(m-1) = 2^2
  CHECK(gh.c2 == 16); // deg R = 4
  auto gf = z_growth_exponents(filiform4_spec());
  CHECK(gf.c1 == 27);  // 3^3
}

TEST_CASE("product spec multiplies blockwise") {
  auto h = heisenberg_spec();
  auto a1 = abelian_spec(1);
  auto prod = product_spec(h, a1);
  CHECK(prod->m == 4);
  CHECK(prod->k == 2);

  GroupElement x = make_element(prod, {Rational(1), Rational(0), Rational(0), Rational(1, 2)});
  GroupElement y = make_element(prod, {Rational(0), Rational(1), Rational(0), Rational(1, 2)});
  CHECK(multiply(prod, x, y) ==
        make_element(prod, {Rational(1), Rational(1), Rational(1), Rational(1)}));

  DetRng rng(31);
  for (int i = 0; i < 100; ++i) {
    GroupElement ga = random_element(rng, h);
    GroupElement gb = random_element(rng, a1);
    GroupElement ha = random_element(rng, h);
    GroupElement hb = random_element(rng, a1);
    std::vector<Rational> lhs_coords = ga.coords;
    lhs_coords.insert(lhs_coords.end(), gb.coords.begin(), gb.coords.end());
    std::vector<Rational> rhs_coords = ha.coords;
    rhs_coords.insert(rhs_coords.end(), hb.coords.begin(), hb.coords.end());
    GroupElement combined =
        multiply(prod, GroupElement{lhs_coords}, GroupElement{rhs_coords});
    GroupElement block1 = multiply(h, ga, ha);
    GroupElement block2 = multiply(a1, gb, hb);
    std::vector<Rational> expect = block1.coords;
    expect.insert(expect.end(), block2.coords.begin(), block2.coords.end());
    CHECK(combined == GroupElement{expect});
  }

  auto aa = product_spec(abelian_spec(2), abelian_spec(3));
  CHECK(aa->k == 1);  // product of abelian specs is abelian
}

TEST_CASE("spec file format round trips") {
  for (const auto& spec : {heisenberg_spec(), filiform4_spec(), abelian_spec(3)}) {
    std::string text = serialize_spec(*spec);
    NilGroupSpec parsed = parse_spec(text, spec->id, spec->allow_degree_k);
    CHECK(serialize_spec(parsed) == text);
    auto validated = validate_spec(parsed);
    DetRng rng(41);
    GroupElement a = random_element(rng, validated);
    GroupElement b = random_element(rng, validated);
    CHECK(multiply(validated, a, b) == multiply(spec, a, b));
  }
  CHECK_THROWS_AS(parse_spec("", "x"), Error);
  CHECK_THROWS_AS(parse_spec("2\n0", "x"), Error);
  CHECK_THROWS_AS(parse_spec("2 1\n0\n1:s1*t1\n", "x"), Error);  // trailing content
  // comments and blank lines are skipped
  auto commented = parse_spec("# heisenberg\n3 2\n\n0\n1:s1*t2\n", "h", true);
  CHECK(serialize_spec(commented) == serialize_spec(*heisenberg_spec()));
}

TEST_CASE("registry lookup") {
  CHECK(registry_spec("heisenberg").has_value());
  CHECK(registry_spec("abelian4").has_value());
  CHECK(registry_spec("abelian4").value()->m == 4);
  CHECK(registry_spec("filiform4").has_value());
  CHECK(!registry_spec("nope").has_value());
  CHECK(!registry_spec("abelian0").has_value());
}

TEST_CASE("dimension mismatches are rejected") {
  auto h = heisenberg_spec();
  GroupElement too_short{{Rational(1)}};
  CHECK_THROWS_AS(multiply(h, too_short, too_short), Error);
  CHECK_THROWS_AS(inverse(h, too_short), Error);
}
