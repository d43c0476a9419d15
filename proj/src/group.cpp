#include "nilfold/group.hpp"

#include <algorithm>
#include <sstream>

#include "nilfold/errors.hpp"

namespace nilfold {

namespace {

const std::vector<Rational>& sample_values() {
  static const std::vector<Rational> vals = {
      Rational(0), Rational(1), Rational(-1), Rational(2),
      Rational(-2), Rational(1, 2), Rational(-1, 2)};
  return vals;
}

// Deterministic walk over the sample grid {0,+-1,+-2,+-1/2}^i; exhaustive
// when small, strided otherwise.
std::vector<std::vector<Rational>> sample_grid(std::size_t arity, std::size_t cap = 2401) {
  const auto& vals = sample_values();
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    total *= vals.size();
    if (total > cap * vals.size()) break;
  }
  std::vector<std::vector<Rational>> out;
  if (arity == 0) {
    out.push_back({});
    return out;
  }
  std::size_t stride = total > cap ? total / cap + 1 : 1;
  for (std::size_t idx = 0; idx < total; idx += stride) {
    std::size_t rem = idx;
    std::vector<Rational> point(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      point[i] = vals[rem % vals.size()];
      rem /= vals.size();
    }
    out.push_back(std::move(point));
  }
  return out;
}

void check_dim(const NilGroupSpec& spec, const GroupElement& g, const char* who) {
  if (g.dim() != spec.m)
    raise(Errc::DimensionMismatch,
          std::string(who) + ": element has " + std::to_string(g.dim()) +
              " coordinates, spec needs " + std::to_string(spec.m));
}

}  // namespace

Rational structure_eval(const ValidatedSpec& spec, std::size_t i, std::span<const Rational> s,
                        std::span<const Rational> t) {
  if (i < 2) return Rational(0);
  const Polynomial& p = spec->structure_polys[i - 2];
  std::vector<Rational> args;
  args.reserve(2 * (i - 1));
  for (std::size_t j = 0; j + 1 < i; ++j) args.push_back(s[j]);
  for (std::size_t j = 0; j + 1 < i; ++j) args.push_back(t[j]);
  return p.eval(args);
}

ValidatedSpec validate_spec(NilGroupSpec spec) {
  if (spec.m == 0) raise(Errc::ParseError, "spec dimension must be positive");
  if (spec.k == 0) raise(Errc::ParseError, "spec step must be positive");
  if (spec.structure_polys.size() + 1 != spec.m)
    raise(Errc::ParseError, "spec needs m-1 structure polynomials");

  for (std::size_t i = 0; i < spec.structure_polys.size(); ++i) {
    const Polynomial& p = spec.structure_polys[i];
    std::size_t block = i + 1;  // P_{i+1} uses s1..s_block, t1..t_block
    if (p.arity() != 2 * block)
      raise(Errc::ParseError, "P_" + std::to_string(block) + " must have arity " +
                                  std::to_string(2 * block));
    unsigned total = p.total_degree();
    unsigned bound = spec.k - 1;
    bool ok = total <= bound;
    if (!ok && spec.allow_degree_k)
      ok = total <= spec.k && p.degree_in(0, block) <= bound &&
           p.degree_in(block, block) <= bound;
    if (!ok)
      raise(Errc::DegreeTooHigh, "P_" + std::to_string(block) + " has total degree " +
                                     std::to_string(total) + " > bound " +
                                     std::to_string(bound));
  }

  // Identity axiom: P_i(s, 0) = P_i(0, t) = 0. Symbolically this means
  // every monomial touches both blocks; the sample grid supplies a witness.
  for (std::size_t i = 0; i < spec.structure_polys.size(); ++i) {
    const Polynomial& p = spec.structure_polys[i];
    std::size_t block = i + 1;
    bool bad = false;
    for (const auto& [e, c] : p.terms()) {
      unsigned s_deg = 0, t_deg = 0;
      for (std::size_t j = 0; j < block; ++j) s_deg += e[j];
      for (std::size_t j = block; j < 2 * block; ++j) t_deg += e[j];
      if (s_deg == 0 || t_deg == 0) {
        bad = true;
        break;
      }
    }
    std::vector<Rational> witness;
    for (const auto& half : sample_grid(block)) {
      std::vector<Rational> args(2 * block, Rational(0));
      // zero t-block, then zero s-block
      std::copy(half.begin(), half.end(), args.begin());
      if (!p.eval(args).is_zero()) {
        bad = true;
        witness = args;
        break;
      }
      std::fill(args.begin(), args.begin() + static_cast<long>(block), Rational(0));
      std::copy(half.begin(), half.end(), args.begin() + static_cast<long>(block));
      if (!p.eval(args).is_zero()) {
        bad = true;
        witness = args;
        break;
      }
    }
    if (bad) {
      std::string msg = "P_" + std::to_string(block) + " violates the identity axiom";
      if (!witness.empty()) {
        msg += " at (";
        for (std::size_t j = 0; j < witness.size(); ++j)
          msg += (j ? "," : "") + witness[j].str();
        msg += ")";
      }
      raise(Errc::IdentityAxiomViolated, msg);
    }
  }

  return ValidatedSpec(std::move(spec));
}

GroupElement identity(const ValidatedSpec& spec) {
  return GroupElement{std::vector<Rational>(spec->m, Rational(0))};
}

GroupElement make_element(const ValidatedSpec& spec, std::vector<Rational> coords) {
  GroupElement g{std::move(coords)};
  check_dim(*spec, g, "make_element");
  return g;
}

GroupElement multiply(const ValidatedSpec& spec, const GroupElement& s, const GroupElement& t) {
  check_dim(*spec, s, "multiply");
  check_dim(*spec, t, "multiply");
  GroupElement out{std::vector<Rational>(spec->m)};
  for (std::size_t i = 1; i <= spec->m; ++i)
    out.coords[i - 1] =
        s.coords[i - 1] + t.coords[i - 1] + structure_eval(spec, i, s.coords, t.coords);
  return out;
}

GroupElement inverse(const ValidatedSpec& spec, const GroupElement& s) {
  check_dim(*spec, s, "inverse");
  GroupElement y{std::vector<Rational>(spec->m)};
  // Solve s * y = 0 coordinate by coordinate.
  for (std::size_t i = 1; i <= spec->m; ++i)
    y.coords[i - 1] = -s.coords[i - 1] - structure_eval(spec, i, s.coords, y.coords);
  return y;
}

GroupElement power_iter(const ValidatedSpec& spec, const GroupElement& x, unsigned long n) {
  check_dim(*spec, x, "power_iter");
  GroupElement acc = identity(spec);
  for (unsigned long i = 0; i < n; ++i) acc = multiply(spec, acc, x);
  return acc;
}

GroupElement power_closed(const ValidatedSpec& spec, const GroupElement& x, unsigned long n) {
  check_dim(*spec, x, "power_closed");
  if (n == 0) raise(Errc::ParseError, "power_closed requires n >= 1");
  const std::size_t m = spec->m;
  // acc[i] accumulates sum_{j<cur} P_{i}(x_1..x_i, Q_{1,j}..Q_{i,j}).
  std::vector<Rational> acc(m, Rational(0));
  std::vector<Rational> q(x.coords);  // Q_{.,1} = x
  for (unsigned long j = 2; j <= n; ++j) {
    for (std::size_t i = 2; i <= m; ++i)
      acc[i - 1] += structure_eval(spec, i, x.coords, q);
    for (std::size_t i = 0; i < m; ++i)
      q[i] = Rational(static_cast<long>(j)) * x.coords[i] + acc[i];
  }
  return GroupElement{std::move(q)};
}

GroupElement power(const ValidatedSpec& spec, const GroupElement& x, const Integer& n) {
  check_dim(*spec, x, "power");
  if (sgn(n) < 0) return inverse(spec, power(spec, x, Integer(-n)));
  GroupElement acc = identity(spec);
  GroupElement base = x;
  Integer e = n;
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = multiply(spec, acc, base);
    e >>= 1;
    if (sgn(e) > 0) base = multiply(spec, base, base);
  }
  return acc;
}

namespace {

// Monomial-wise max of |coefficients| over all structure polynomials,
// lifted to the common variable space s1..s_{m-1}, t1..t_{m-1}.
Polynomial majorant(const NilGroupSpec& spec) {
  std::size_t w = spec.m - 1;
  Polynomial p(st_vars(w));
  for (std::size_t i = 0; i < spec.structure_polys.size(); ++i) {
    std::size_t block = i + 1;
    for (const auto& [e, c] : spec.structure_polys[i].terms()) {
      Exponents lifted(2 * w, 0);
      for (std::size_t j = 0; j < block; ++j) lifted[j] = e[j];
      for (std::size_t j = 0; j < block; ++j) lifted[w + j] = e[block + j];
      Rational a = c.abs();
      auto it = p.terms().find(lifted);
      if (it == p.terms().end()) {
        p.add_term(lifted, a);
      } else if (it->second < a) {
        p.add_term(lifted, a - it->second);
      }
    }
  }
  return p;
}

Polynomial compose_univariate(const Polynomial& outer, const Polynomial& inner) {
  std::vector<Polynomial> args = {inner};
  return outer.substitute(args);
}

}  // namespace

Polynomial majorant_step_poly(const ValidatedSpec& spec) {
  auto xs = x_vars(1);
  Polynomial x = Polynomial::variable(xs, 0);
  if (spec->m == 1) return x;  // no structure polynomials: S(x) = x
  Polynomial p = majorant(*spec);
  // T(x) = P(1,...,1, x,...,x)
  std::size_t w = spec->m - 1;
  std::vector<Polynomial> args;
  args.reserve(2 * w);
  for (std::size_t j = 0; j < w; ++j) args.push_back(Polynomial::constant(xs, Rational(1)));
  for (std::size_t j = 0; j < w; ++j) args.push_back(x);
  Polynomial t = p.substitute(args);
  // S(x) = x + (x - 1) T(x)
  return x + (x - Polynomial::constant(xs, Rational(1))) * t;
}

Polynomial majorant_bound_poly(const ValidatedSpec& spec) {
  Polynomial s = majorant_step_poly(spec);
  Polynomial r = Polynomial::variable(x_vars(1), 0);
  for (std::size_t i = 0; i + 1 < spec->m; ++i) r = compose_univariate(s, r);
  return r;
}

Rational coeff_bound(const ValidatedSpec& spec, unsigned long n) {
  Polynomial s = majorant_step_poly(spec);
  Rational value(static_cast<long>(n));
  std::vector<Rational> point{value};
  for (std::size_t i = 0; i + 1 < spec->m; ++i) {
    point[0] = value;
    value = s.eval(point);
  }
  return value;
}

GrowthExponents z_growth_exponents(const ValidatedSpec& spec) {
  GrowthExponents out;
  out.c1 = pow(Integer(spec->k), static_cast<unsigned long>(spec->m - 1));
  out.c2 = out.c1 * Integer(majorant_bound_poly(spec).total_degree());
  return out;
}

ValidatedSpec product_spec(const ValidatedSpec& a, const ValidatedSpec& b) {
  NilGroupSpec out;
  out.id = a->id + "x" + b->id;
  out.m = a->m + b->m;
  out.k = std::max(a->k, b->k);
  out.allow_degree_k = a->allow_degree_k || b->allow_degree_k;
  for (std::size_t i = 1; i < out.m; ++i) {
    std::size_t block = i;  // P_i over s1..si,t1..ti
    Polynomial p(st_vars(block));
    if (i < a->m) {
      // first block: same polynomial, same leading variables
      for (const auto& [e, c] : a->structure_polys[i - 1].terms()) {
        Exponents lifted(2 * block, 0);
        for (std::size_t j = 0; j < i; ++j) lifted[j] = e[j];
        for (std::size_t j = 0; j < i; ++j) lifted[block + j] = e[i + j];
        p.add_term(lifted, c);
      }
    } else if (i > a->m) {
      // second block: shift variable indices past the first block
      std::size_t local = i - a->m;  // index within spec b
      for (const auto& [e, c] : b->structure_polys[local - 1].terms()) {
        Exponents lifted(2 * block, 0);
        for (std::size_t j = 0; j < local; ++j) lifted[a->m + j] = e[j];
        for (std::size_t j = 0; j < local; ++j) lifted[block + a->m + j] = e[local + j];
        p.add_term(lifted, c);
      }
    }
    // i == a->m: cross-block polynomial is identically zero
    out.structure_polys.push_back(std::move(p));
  }
  return validate_spec(std::move(out));
}

ValidatedSpec abelian_spec(std::size_t dim) {
  NilGroupSpec spec;
  spec.id = "abelian" + std::to_string(dim);
  spec.m = dim;
  spec.k = 1;
  for (std::size_t i = 1; i < dim; ++i) spec.structure_polys.push_back(Polynomial(st_vars(i)));
  return validate_spec(std::move(spec));
}

ValidatedSpec heisenberg_spec() {
  NilGroupSpec spec;
  spec.id = "heisenberg";
  spec.m = 3;
  spec.k = 2;
  spec.allow_degree_k = true;
  spec.structure_polys.push_back(Polynomial(st_vars(1)));  // P_1 = 0
  Polynomial p2(st_vars(2));
  p2.add_term({1, 0, 0, 1}, Rational(1));  // s1*t2
  spec.structure_polys.push_back(std::move(p2));
  return validate_spec(std::move(spec));
}

ValidatedSpec filiform4_spec() {
  NilGroupSpec spec;
  spec.id = "filiform4";
  spec.m = 4;
  spec.k = 3;
  spec.allow_degree_k = true;
  spec.structure_polys.push_back(Polynomial(st_vars(1)));  // P_1 = 0
  Polynomial p2(st_vars(2));
  p2.add_term({1, 0, 0, 1}, Rational(1));  // s1*t2
  spec.structure_polys.push_back(std::move(p2));
  Polynomial p3(st_vars(3));
  p3.add_term({1, 0, 0, 0, 0, 1}, Rational(1));      // s1*t3
  p3.add_term({2, 0, 0, 0, 1, 0}, Rational(1, 2));   // s1^2*t2 / 2
  p3.add_term({1, 0, 0, 0, 1, 0}, Rational(-1, 2));  // -s1*t2 / 2
  spec.structure_polys.push_back(std::move(p3));
  return validate_spec(std::move(spec));
}

std::optional<ValidatedSpec> registry_spec(const std::string& name) {
  if (name == "heisenberg") return heisenberg_spec();
  if (name == "filiform4") return filiform4_spec();
  if (name.rfind("abelian", 0) == 0) {
    std::string rest = name.substr(7);
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(),
                                     [](char c) { return c >= '0' && c <= '9'; })) {
      std::size_t d = std::stoul(rest);
      if (d >= 1) return abelian_spec(d);
    }
  }
  return std::nullopt;
}

std::string serialize_spec(const NilGroupSpec& spec) {
  std::ostringstream out;
  out << spec.m << ' ' << spec.k << '\n';
  for (const auto& p : spec.structure_polys) out << p.str() << '\n';
  return out.str();
}

NilGroupSpec parse_spec(const std::string& text, const std::string& id, bool allow_degree_k) {
  std::istringstream in(text);
  std::string line;
  NilGroupSpec spec;
  spec.id = id;
  spec.allow_degree_k = allow_degree_k;
  auto next_line = [&](std::string& dst) {
    while (std::getline(in, dst)) {
      auto first = dst.find_first_not_of(" \t\r");
      if (first == std::string::npos || dst[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line(line)) raise(Errc::ParseError, "spec file: missing header");
  {
    std::istringstream head(line);
    long m = 0, k = 0;
    if (!(head >> m >> k) || m < 1 || k < 1)
      raise(Errc::ParseError, "spec file: bad header '" + line + "'");
    spec.m = static_cast<std::size_t>(m);
    spec.k = static_cast<unsigned>(k);
  }
  for (std::size_t i = 1; i < spec.m; ++i) {
    if (!next_line(line))
      raise(Errc::ParseError, "spec file: missing polynomial P_" + std::to_string(i));
    spec.structure_polys.push_back(Polynomial::parse(line, st_vars(i)));
  }
  if (next_line(line))
    raise(Errc::ParseError, "spec file: trailing content after P_" + std::to_string(spec.m - 1));
  return spec;
}

}  // namespace nilfold
