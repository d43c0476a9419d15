#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nilfold/group.hpp"
#include "nilfold/integer_set.hpp"

namespace nilfold {

// Point of X = G/Gamma identified with the fundamental domain [0,1)^m.
struct ManifoldPoint {
  std::vector<Rational> coords;

  std::size_t dim() const { return coords.size(); }
  bool operator==(const ManifoldPoint& o) const { return coords == o.coords; }
};

// The unique z in Z^m with x * z in [0,1)^m, via the floor recursion.
LatticeVector z_vector(const ValidatedSpec& spec, const GroupElement& x);
// phi(x) = x * z(x); every coordinate lands in [0,1).
ManifoldPoint reduce(const ValidatedSpec& spec, const GroupElement& x);

// max_i ||p_i - q_i|| with ||.|| the distance to the nearest integer.
Rational torus_distance(const ManifoldPoint& p, const ManifoldPoint& q);

// Orbit g^A base, reduced to the fundamental domain, one row per exponent.
struct OrbitTable {
  std::string spec_id;
  GroupElement generator;
  GroupElement base;
  std::vector<Integer> exponents;
  std::vector<ManifoldPoint> points;
};

OrbitTable orbit(const ValidatedSpec& spec, const GroupElement& g, const GroupElement& base,
                 const IntegerSet& exponents);
// Base defaults to the identity coset 1_X.
OrbitTable orbit(const ValidatedSpec& spec, const GroupElement& g, const IntegerSet& exponents);

Rational min_pair_distance(const OrbitTable& a, const OrbitTable& b);

// d(g^A 1_X, g^B 1_X) >= eps, exactly. A and B must be disjoint.
bool is_eps_separable(const ValidatedSpec& spec, const GroupElement& g, const IntegerSet& a,
                      const IntegerSet& b, const Rational& eps);

// Connected components of the orbit graph with edges at distance < eps,
// as a partition of the exponent list. Blocks are sorted by least member
// and ordered among themselves the same way.
std::vector<std::vector<Integer>> cluster_components(const OrbitTable& table,
                                                     const Rational& eps);

// min over r in R of d(g^r 1_X, 1_X); the gap at this finite truncation.
Rational recurrence_gap(const ValidatedSpec& spec, const GroupElement& g, const IntegerSet& r);

// Character observable F(p) = exp(2*pi*i*<w, p>).
struct FunctionDescriptor {
  std::vector<long> frequency;
};

// The single float boundary: the phase is exact, the exponential is not.
std::complex<double> nilsequence_eval(const ValidatedSpec& spec, const GroupElement& g,
                                      const GroupElement& base, const FunctionDescriptor& f,
                                      const Integer& n);
// Exact phase <w, reduce(g^n * base)> mod 1.
Rational nilsequence_phase(const ValidatedSpec& spec, const GroupElement& g,
                           const GroupElement& base, const FunctionDescriptor& f,
                           const Integer& n);

// CSV rows `exponent, coord_1, ..., coord_m` with exact p/q strings.
std::string orbit_to_csv(const OrbitTable& table);
std::string orbit_to_json(const OrbitTable& table);

}  // namespace nilfold
