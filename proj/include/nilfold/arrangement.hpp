#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilfold/group.hpp"
#include "nilfold/integer_set.hpp"
#include "nilfold/polynomial.hpp"

namespace nilfold {

// Arrangement of polynomial zero sets inside a rational box.
struct Arrangement {
  std::vector<Polynomial> polys;
  unsigned degree_bound = 0;  // b; every poly must have total degree <= b
  std::vector<std::pair<Rational, Rational>> box;
};

Arrangement make_arrangement(std::vector<Polynomial> polys, unsigned degree_bound,
                             std::vector<std::pair<Rational, Rational>> box);

struct RegionCensus {
  Integer region_count;
  std::string method;  // "grid" or "exact1d"
  unsigned resolution = 0;
  Rational guard;       // boundary guard delta
  bool stable = false;  // guard-halving rerun agreed
};

// The (2*b*l)^m region bound.
Integer region_bound(unsigned degree_bound, unsigned poly_count, unsigned dim);

// Exact region count on an interval: at most one variable, distinct real
// roots isolated by Sturm counts after square-free reduction.
RegionCensus count_regions_1d(const std::vector<Polynomial>& polys, const Rational& lo,
                              const Rational& hi);

// Sign-vector census over a uniform grid. Grid points where any |poly| < delta
// are boundary and excluded; counts axis-adjacent components of constant sign
// vector. A lower bound that is exact once the resolution separates regions.
RegionCensus count_regions_grid(const Arrangement& arr, unsigned resolution,
                                const Rational& delta, unsigned threads = 1);
// Same, plus the delta/2 agreement rerun that sets the stable flag.
RegionCensus count_regions_stable(const Arrangement& arr, unsigned resolution,
                                  const Rational& delta, unsigned threads = 1);

// Census of the pairwise "orbit distance = eps" loci over g in [-M,M]^m:
// sign vectors of f_ab(g) = d(phi(g^a), phi(g^b)) - eps for a < b in R.
RegionCensus separability_equation_census(const ValidatedSpec& spec, const IntegerSet& r,
                                          const Rational& m_box, const Rational& eps,
                                          unsigned resolution, unsigned threads = 1);

std::string census_to_json(const Arrangement& arr, const RegionCensus& census);

// Univariate helpers shared with tests.
namespace upoly {
// Dense coefficients, low degree first; trailing zeros stripped.
using Poly = std::vector<Rational>;

Poly from_polynomial(const Polynomial& p);
Rational eval(const Poly& p, const Rational& x);
Poly derivative(const Poly& p);
Poly gcd(Poly a, Poly b);
Poly square_free(const Poly& p);
Poly multiply(const Poly& a, const Poly& b);
// Number of distinct real roots in the open interval (lo, hi); endpoints
// must not be roots.
std::size_t count_roots(const Poly& p, const Rational& lo, const Rational& hi);
}  // namespace upoly

}  // namespace nilfold
