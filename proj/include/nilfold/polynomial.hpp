#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "nilfold/rational.hpp"

namespace nilfold {

// Exponent vector, one entry per variable of the owning polynomial.
using Exponents = std::vector<unsigned>;

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are keyed by exponent vector; zero coefficients are never stored,
// so the term map is a canonical form and comparison is structural.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Polynomial zero(std::vector<std::string> vars) { return Polynomial(std::move(vars)); }
  static Polynomial constant(std::vector<std::string> vars, const Rational& c);
  static Polynomial variable(std::vector<std::string> vars, std::size_t index);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t arity() const { return vars_.size(); }

  // Merges a term into the map, dropping it if the coefficient cancels.
  void add_term(const Exponents& exps, const Rational& coeff);

  unsigned total_degree() const;  // 0 for the zero polynomial
  // Max combined degree over the variable index range [first, first+count).
  unsigned degree_in(std::size_t first, std::size_t count) const;

  Rational eval(std::span<const Rational> point) const;
  // Substitutes args[i] for variable i; all args share one variable space.
  Polynomial substitute(std::span<const Polynomial> args) const;

  // Sum of |coefficients|.
  Rational coeff_abs_sum() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  // Spec-file term list: space-separated `coeff:monomial` pairs with
  // monomials like `s1^2*t2`; the zero polynomial prints as `0`.
  std::string str() const;
  static Polynomial parse(const std::string& text, std::vector<std::string> vars);

  // Human-readable sum form, e.g. `x1^2 - x2^2 - 1`.
  std::string human_str() const;

 private:
  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
};

// Standard variable lists.
std::vector<std::string> st_vars(std::size_t i);  // s1..si, t1..ti
std::vector<std::string> x_vars(std::size_t m);   // x1..xm

}  // namespace nilfold
