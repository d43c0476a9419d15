#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nilfold/rational.hpp"

namespace nilfold {

// Finite strictly increasing set of positive integers plus the tag of the
// generator that produced it ("squares", "powers_of_2", "custom", ...).
struct IntegerSet {
  std::vector<Integer> elements;
  std::string tag = "custom";

  std::size_t size() const { return elements.size(); }
  bool contains(const Integer& v) const;
  IntegerSet prefix(std::size_t n) const;
};

// Validates ordering/positivity.
IntegerSet make_integer_set(std::vector<Integer> elements, std::string tag = "custom");

// min over the prefix of r_{n+1} / r_n.
Rational lacunary_ratio(const IntegerSet& e);

// Finite-prefix lacunarity proxy: every ratio must exceed 1, and a ratio
// sequence that decreases strictly along the whole prefix while ending below
// 3/2 is the signature of polynomial growth, not of a lacunary set.
// Sets with fewer than two elements pass vacuously.
bool prefix_lacunary_consistent(const IntegerSet& e);

// Desk-scale sublacunarity report: (log r_N)/N at the prefix end and the
// least-squares slope of log r_n vs n over the tail half.
struct SublacunarityReport {
  double end_slope = 0.0;
  double lsq_slope = 0.0;
  Rational threshold;
  bool consistent = false;  // both slopes below threshold
};
SublacunarityReport sublacunarity_slope(const IntegerSet& e, const Rational& threshold = Rational(1, 10));

// Closed-form set descriptor: one of
//   geometric c*b^n, polynomial sum a_i n^i, factorial n!, explicit list,
// optionally shifted by a polynomial in n. Closed forms provide exact
// residue sets mod q, which is what makes rational-rotation certificates
// hold for the full infinite set.
class SetDescriptor {
 public:
  static SetDescriptor geometric(Integer scale, Integer base);
  static SetDescriptor polynomial(std::vector<Integer> coeffs);  // coeffs[i] * n^i
  static SetDescriptor factorial();
  static SetDescriptor explicit_list(std::vector<Integer> elements);

  // Adds a polynomial shift p(n) to every term.
  SetDescriptor shifted(std::vector<Integer> shift_coeffs) const;
  // Adds a constant.
  SetDescriptor shifted(const Integer& c) const;

  // n-th term, n >= 1.
  Integer term(std::size_t n) const;
  // First n terms as an IntegerSet (terms must be increasing and positive).
  IntegerSet prefix(std::size_t n) const;

  // Exact residue set {term(n) mod q : n in N}; nullopt for explicit lists
  // (no closed form beyond the truncation).
  std::optional<std::set<Integer>> residues_mod(const Integer& q) const;

  bool closed_form() const { return kind_ != Kind::Explicit; }
  // An explicit list with no elements: the empty set.
  bool known_empty() const { return kind_ == Kind::Explicit && list_.empty(); }
  // Size of an explicit list; nullopt for closed forms (infinite).
  std::optional<std::size_t> known_size() const {
    if (kind_ != Kind::Explicit) return std::nullopt;
    return list_.size();
  }
  const std::string& tag() const { return tag_; }

  // Parses CLI grammar: pow2, pow3, squares, cubes, naturals, factorial,
  // odds, evens, a..b, comma lists, and polynomial shifts like pow2+2n-1.
  static SetDescriptor parse(const std::string& text);

 private:
  enum class Kind { Geometric, Poly, Factorial, Explicit };
  SetDescriptor() = default;

  Kind kind_ = Kind::Explicit;
  Integer scale_ = 1;  // geometric
  Integer base_ = 2;   // geometric
  std::vector<Integer> coeffs_;       // polynomial
  std::vector<Integer> shift_;        // polynomial shift added to every kind
  std::vector<Integer> list_;         // explicit
  std::string tag_ = "custom";
};

}  // namespace nilfold
