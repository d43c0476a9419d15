#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilfold/polynomial.hpp"
#include "nilfold/rational.hpp"

namespace nilfold {

// Element of the group in Mal'cev coordinates: an exact rational m-vector.
struct GroupElement {
  std::vector<Rational> coords;

  std::size_t dim() const { return coords.size(); }
  bool operator==(const GroupElement& o) const { return coords == o.coords; }
};

// Integer lattice vector (the z(x) of the fundamental-domain reduction).
struct LatticeVector {
  std::vector<Integer> entries;

  std::size_t dim() const { return entries.size(); }
  bool operator==(const LatticeVector& o) const { return entries == o.entries; }
};

// A k-step nilpotent group presented by Mal'cev structure polynomials.
// Coordinate i of s*t is s_i + t_i + P_{i-1}(s_1..s_{i-1}, t_1..t_{i-1}),
// with P_0 understood as 0. structure_polys[i-1] holds P_i over the 2i
// variables s1..si,t1..ti.
struct NilGroupSpec {
  std::string id;
  std::size_t m = 0;
  unsigned k = 0;
  std::vector<Polynomial> structure_polys;
  // Accepts total degree k when every variable block stays within k-1
  // (the natural Heisenberg presentation needs this).
  bool allow_degree_k = false;
};

// Proof token that validate_spec ran. Group operations only accept these.
class ValidatedSpec {
 public:
  const NilGroupSpec& operator*() const { return spec_; }
  const NilGroupSpec* operator->() const { return &spec_; }

  friend ValidatedSpec validate_spec(NilGroupSpec spec);

 private:
  explicit ValidatedSpec(NilGroupSpec spec) : spec_(std::move(spec)) {}
  NilGroupSpec spec_;
};

// Checks shape, the degree bound and the identity axiom (P_i must vanish
// whenever either variable block is zero). Throws DegreeTooHigh or
// IdentityAxiomViolated with the offending index.
ValidatedSpec validate_spec(NilGroupSpec spec);

GroupElement identity(const ValidatedSpec& spec);
GroupElement make_element(const ValidatedSpec& spec, std::vector<Rational> coords);

GroupElement multiply(const ValidatedSpec& spec, const GroupElement& s, const GroupElement& t);
GroupElement inverse(const ValidatedSpec& spec, const GroupElement& s);

// P_{i-1}(s_1..s_{i-1}, t_1..t_{i-1}) for 1-based coordinate i; P_0 = 0.
// Shared by multiplication, the power recursion and the floor reduction.
Rational structure_eval(const ValidatedSpec& spec, std::size_t i, std::span<const Rational> s,
                        std::span<const Rational> t);

// n-fold product by repeated multiplication; n = 0 gives the identity.
GroupElement power_iter(const ValidatedSpec& spec, const GroupElement& x, unsigned long n);
// Same value through the Q-recursion Q_{i,n} = n x_i + sum_j P_{i-1}(x, Q_{.,j}),
// evaluated numerically by dynamic programming over j. n >= 1.
GroupElement power_closed(const ValidatedSpec& spec, const GroupElement& x, unsigned long n);
// Binary powering (used by orbit code for large exponents); equals power_iter.
GroupElement power(const ValidatedSpec& spec, const GroupElement& x, const Integer& n);

// Majorant bound R(n) on the coefficient |.|-sums of the power polynomials
// Q_{i,n}: R = S composed with itself m-1 times, S(x) = x + (x-1)P(1,..,1,x,..,x),
// P the monomial-wise max of |coefficients| over the structure polynomials.
Rational coeff_bound(const ValidatedSpec& spec, unsigned long n);
// The univariate S and R from the same construction.
Polynomial majorant_step_poly(const ValidatedSpec& spec);
Polynomial majorant_bound_poly(const ValidatedSpec& spec);

// Growth exponents (c1, c2): c1 = k^(m-1), c2 = c1 * deg R.
struct GrowthExponents {
  Integer c1;
  Integer c2;
};
GrowthExponents z_growth_exponents(const ValidatedSpec& spec);

// Direct product; blocks multiply independently, spec1's block first.
ValidatedSpec product_spec(const ValidatedSpec& a, const ValidatedSpec& b);

// Built-in specs.
ValidatedSpec abelian_spec(std::size_t dim);
ValidatedSpec heisenberg_spec();
ValidatedSpec filiform4_spec();
// Resolves "abelianN" / "heisenberg" / "filiform4"; nullopt if unknown.
std::optional<ValidatedSpec> registry_spec(const std::string& name);

// Textual spec format: header `m k`, then m-1 polynomial lines of
// `coeff:monomial` pairs. Round-trips bit-exact through serialize/parse.
std::string serialize_spec(const NilGroupSpec& spec);
NilGroupSpec parse_spec(const std::string& text, const std::string& id = "custom",
                        bool allow_degree_k = false);

}  // namespace nilfold
