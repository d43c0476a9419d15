#include "nilfold/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nilfold/errors.hpp"

namespace nilfold {

Polynomial Polynomial::constant(std::vector<std::string> vars, const Rational& c) {
  Polynomial p(std::move(vars));
  p.add_term(Exponents(p.arity(), 0), c);
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> vars, std::size_t index) {
  Polynomial p(std::move(vars));
  Exponents e(p.arity(), 0);
  e.at(index) = 1;
  p.add_term(e, Rational(1));
  return p;
}

void Polynomial::add_term(const Exponents& exps, const Rational& coeff) {
  if (exps.size() != arity()) raise(Errc::DimensionMismatch, "term arity mismatch");
  if (coeff.is_zero()) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

unsigned Polynomial::total_degree() const {
  unsigned deg = 0;
  for (const auto& [e, c] : terms_)
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0u));
  return deg;
}

unsigned Polynomial::degree_in(std::size_t first, std::size_t count) const {
  unsigned deg = 0;
  for (const auto& [e, c] : terms_) {
    unsigned d = 0;
    for (std::size_t i = first; i < first + count && i < e.size(); ++i) d += e[i];
    deg = std::max(deg, d);
  }
  return deg;
}

Rational Polynomial::eval(std::span<const Rational> point) const {
  if (point.size() != arity()) raise(Errc::DimensionMismatch, "eval arity mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term *= nilfold::pow(point[i], e[i]);
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> args) const {
  if (args.size() != arity()) raise(Errc::DimensionMismatch, "substitute arity mismatch");
  std::vector<std::string> target =
      args.empty() ? std::vector<std::string>{} : args[0].vars();
  Polynomial acc(target);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * args[i].pow(e[i]);
    acc = acc + term;
  }
  return acc;
}

Rational Polynomial::coeff_abs_sum() const {
  Rational acc(0);
  for (const auto& [e, c] : terms_) acc += c.abs();
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out(vars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(ea);
      for (std::size_t i = 0; i < e.size() && i < eb.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out(vars_);
  for (const auto& [e, k] : terms_) out.add_term(e, k * c);
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial acc = Polynomial::constant(vars_, Rational(1));
  for (unsigned i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

namespace {

std::string monomial_str(const Exponents& e, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += ' ';
    out += c.str() + ':' + monomial_str(e, vars_);
  }
  return out;
}

Polynomial Polynomial::parse(const std::string& text, std::vector<std::string> vars) {
  Polynomial out(std::move(vars));
  std::istringstream in(text);
  std::string token;
  bool any = false;
  while (in >> token) {
    any = true;
    if (token == "0") continue;
    auto colon = token.find(':');
    if (colon == std::string::npos)
      raise(Errc::ParseError, "bad polynomial term '" + token + "' (expected coeff:monomial)");
    Rational coeff = Rational::parse(token.substr(0, colon));
    Exponents exps(out.arity(), 0);
    std::string mono = token.substr(colon + 1);
    if (mono != "1") {
      std::size_t pos = 0;
      while (pos < mono.size()) {
        auto star = mono.find('*', pos);
        std::string factor = mono.substr(pos, star == std::string::npos ? star : star - pos);
        pos = star == std::string::npos ? mono.size() : star + 1;
        unsigned exp = 1;
        auto caret = factor.find('^');
        if (caret != std::string::npos) {
          exp = static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
          factor = factor.substr(0, caret);
        }
        auto it = std::find(out.vars_.begin(), out.vars_.end(), factor);
        if (it == out.vars_.end())
          raise(Errc::ParseError, "unknown variable '" + factor + "' in polynomial");
        exps[static_cast<std::size_t>(it - out.vars_.begin())] += exp;
      }
    }
    out.add_term(exps, coeff);
  }
  if (!any) raise(Errc::ParseError, "empty polynomial text");
  return out;
}

std::string Polynomial::human_str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    Rational a = c.abs();
    std::string mono = monomial_str(e, vars_);
    std::string piece;
    if (mono == "1")
      piece = a.str();
    else
      piece = (a == Rational(1) ? mono : a.str() + "*" + mono);
    if (out.empty())
      out = (c.sign() < 0 ? "-" : "") + piece;
    else
      out += (c.sign() < 0 ? " - " : " + ") + piece;
  }
  return out;
}

std::vector<std::string> st_vars(std::size_t i) {
  std::vector<std::string> v;
  v.reserve(2 * i);
  for (std::size_t j = 1; j <= i; ++j) v.push_back("s" + std::to_string(j));
  for (std::size_t j = 1; j <= i; ++j) v.push_back("t" + std::to_string(j));
  return v;
}

std::vector<std::string> x_vars(std::size_t m) {
  std::vector<std::string> v;
  v.reserve(m);
  for (std::size_t j = 1; j <= m; ++j) v.push_back("x" + std::to_string(j));
  return v;
}

}  // namespace nilfold
