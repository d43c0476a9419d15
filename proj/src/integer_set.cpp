#include "nilfold/integer_set.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "nilfold/errors.hpp"

namespace nilfold {

bool IntegerSet::contains(const Integer& v) const {
  return std::binary_search(elements.begin(), elements.end(), v);
}

IntegerSet IntegerSet::prefix(std::size_t n) const {
  IntegerSet out;
  out.tag = tag;
  out.elements.assign(elements.begin(),
                      elements.begin() + static_cast<long>(std::min(n, elements.size())));
  return out;
}

IntegerSet make_integer_set(std::vector<Integer> elements, std::string tag) {
  if (elements.empty()) raise(Errc::TooShort, "integer set must be nonempty");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (sgn(elements[i]) <= 0)
      raise(Errc::ParseError, "integer set elements must be positive");
    if (i > 0 && elements[i] <= elements[i - 1])
      raise(Errc::ParseError, "integer set must be strictly increasing");
  }
  return IntegerSet{std::move(elements), std::move(tag)};
}

Rational lacunary_ratio(const IntegerSet& e) {
  if (e.size() < 2) raise(Errc::TooShort, "lacunary_ratio needs at least two elements");
  Rational best = Rational(e.elements[1], e.elements[0]);
  for (std::size_t i = 2; i < e.size(); ++i)
    best = min(best, Rational(e.elements[i], e.elements[i - 1]));
  return best;
}

bool prefix_lacunary_consistent(const IntegerSet& e) {
  const auto& r = e.elements;
  if (r.size() < 2) return true;
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    if (r[i + 1] <= r[i] || !(Rational(r[i + 1], r[i]) > Rational(1))) return false;
  if (r.size() < 3) return true;
  bool strictly_decreasing = true;
  for (std::size_t i = 0; i + 2 < r.size(); ++i)
    if (Rational(r[i + 2], r[i + 1]) >= Rational(r[i + 1], r[i])) strictly_decreasing = false;
  if (strictly_decreasing && Rational(r.back(), r[r.size() - 2]) < Rational(3, 2)) return false;
  return true;
}

namespace {

double log_mpz(const Integer& v) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

SublacunarityReport sublacunarity_slope(const IntegerSet& e, const Rational& threshold) {
  if (e.size() < 2) raise(Errc::TooShort, "sublacunarity_slope needs at least two elements");
  SublacunarityReport rep;
  rep.threshold = threshold;
  const std::size_t n = e.size();
  rep.end_slope = log_mpz(e.elements[n - 1]) / static_cast<double>(n);

  // least squares of log r_i against i over the tail half
  std::size_t start = n / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double count = 0;
  for (std::size_t i = start; i < n; ++i) {
    double x = static_cast<double>(i + 1);
    double y = log_mpz(e.elements[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    count += 1;
  }
  double denom = count * sxx - sx * sx;
  rep.lsq_slope = denom == 0 ? rep.end_slope : (count * sxy - sx * sy) / denom;

  double thr = threshold.to_double();
  rep.consistent = rep.end_slope < thr && rep.lsq_slope < thr;
  return rep;
}

SetDescriptor SetDescriptor::geometric(Integer scale, Integer base) {
  SetDescriptor d;
  d.kind_ = Kind::Geometric;
  d.scale_ = std::move(scale);
  d.base_ = std::move(base);
  d.tag_ = (d.scale_ == 1 ? "" : d.scale_.get_str() + "*") + "pow" + d.base_.get_str();
  return d;
}

SetDescriptor SetDescriptor::polynomial(std::vector<Integer> coeffs) {
  SetDescriptor d;
  d.kind_ = Kind::Poly;
  d.coeffs_ = std::move(coeffs);
  d.tag_ = "poly";
  return d;
}

SetDescriptor SetDescriptor::factorial() {
  SetDescriptor d;
  d.kind_ = Kind::Factorial;
  d.tag_ = "factorial";
  return d;
}

SetDescriptor SetDescriptor::explicit_list(std::vector<Integer> elements) {
  SetDescriptor d;
  d.kind_ = Kind::Explicit;
  d.list_ = std::move(elements);
  d.tag_ = "custom";
  return d;
}

SetDescriptor SetDescriptor::shifted(std::vector<Integer> shift_coeffs) const {
  SetDescriptor d = *this;
  if (d.shift_.size() < shift_coeffs.size()) d.shift_.resize(shift_coeffs.size(), 0);
  for (std::size_t i = 0; i < shift_coeffs.size(); ++i) d.shift_[i] += shift_coeffs[i];
  d.tag_ = tag_ + "+shift";
  return d;
}

SetDescriptor SetDescriptor::shifted(const Integer& c) const { return shifted(std::vector<Integer>{c}); }

namespace {

Integer eval_poly(const std::vector<Integer>& coeffs, const Integer& n) {
  Integer acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * n + coeffs[i];
  return acc;
}

}  // namespace

Integer SetDescriptor::term(std::size_t n) const {
  if (n == 0) raise(Errc::ParseError, "set terms are indexed from 1");
  Integer in(static_cast<unsigned long>(n));
  Integer value;
  switch (kind_) {
    case Kind::Geometric: {
      Integer p;
      mpz_pow_ui(p.get_mpz_t(), base_.get_mpz_t(), static_cast<unsigned long>(n));
      value = scale_ * p;
      break;
    }
    case Kind::Poly:
      value = eval_poly(coeffs_, in);
      break;
    case Kind::Factorial: {
      mpz_fac_ui(value.get_mpz_t(), static_cast<unsigned long>(n));
      break;
    }
    case Kind::Explicit:
      if (n > list_.size()) raise(Errc::TooShort, "explicit set has no term " + std::to_string(n));
      value = list_[n - 1];
      break;
  }
  if (!shift_.empty()) value += eval_poly(shift_, in);
  return value;
}

IntegerSet SetDescriptor::prefix(std::size_t n) const {
  std::vector<Integer> elems;
  elems.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) elems.push_back(term(i));
  return make_integer_set(std::move(elems), tag_);
}

std::optional<std::set<Integer>> SetDescriptor::residues_mod(const Integer& q) const {
  if (kind_ == Kind::Explicit) return std::nullopt;
  if (sgn(q) <= 0) raise(Errc::ParseError, "modulus must be positive");
  std::set<Integer> out;
  // State: (kind-specific running value mod q, n mod q). term(n) mod q is a
  // function of the state and the state sequence is eventually periodic, so
  // collecting values until a state repeats exhausts the residue set.
  std::set<std::pair<Integer, Integer>> seen;
  Integer run;  // b^n mod q, or n! mod q
  switch (kind_) {
    case Kind::Geometric:
      run = ((base_ % q) + q) % q;
      break;
    case Kind::Factorial:
      run = 1 % q;
      break;
    default:
      run = 0;
      break;
  }
  Integer n = 1;
  while (true) {
    Integer nmod = n % q;
    if (!seen.insert({run, nmod}).second) break;
    Integer value;
    switch (kind_) {
      case Kind::Geometric:
        value = scale_ * run;
        break;
      case Kind::Poly:
        value = eval_poly(coeffs_, nmod);
        break;
      case Kind::Factorial:
        value = run;
        break;
      case Kind::Explicit:
        value = 0;
        break;
    }
    if (!shift_.empty()) value += eval_poly(shift_, nmod);
    out.insert(((value % q) + q) % q);
    n += 1;
    switch (kind_) {
      case Kind::Geometric:
        run = (run * base_) % q;
        break;
      case Kind::Factorial:
        // (n+1)! = n! * (n+1); only n+1 mod q matters
        run = (run * (n % q)) % q;
        break;
      default:
        break;
    }
  }
  return out;
}

namespace {

bool is_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// One signed polynomial term in n: "2n", "-1", "n^2", "3n^2".
void parse_shift_term(const std::string& term, int sign, std::vector<Integer>& coeffs) {
  auto npos = term.find('n');
  Integer coeff = 1;
  std::size_t deg = 0;
  if (npos == std::string::npos) {
    if (!is_digits(term)) raise(Errc::ParseError, "bad set shift term '" + term + "'");
    coeff = Integer(term);
    deg = 0;
  } else {
    std::string head = term.substr(0, npos);
    if (!head.empty()) {
      if (!is_digits(head)) raise(Errc::ParseError, "bad set shift term '" + term + "'");
      coeff = Integer(head);
    }
    deg = 1;
    std::string tail = term.substr(npos + 1);
    if (!tail.empty()) {
      if (tail[0] != '^' || !is_digits(tail.substr(1)))
        raise(Errc::ParseError, "bad set shift term '" + term + "'");
      deg = std::stoul(tail.substr(1));
    }
  }
  if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
  coeffs[deg] += sign * coeff;
}

}  // namespace

SetDescriptor SetDescriptor::parse(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) raise(Errc::ParseError, "empty set descriptor");

  // explicit range a..b
  auto dots = text.find("..");
  if (dots != std::string::npos && is_digits(text.substr(0, dots)) &&
      is_digits(text.substr(dots + 2))) {
    Integer a(text.substr(0, dots)), b(text.substr(dots + 2));
    std::vector<Integer> elems;
    for (Integer v = a; v <= b; v += 1) elems.push_back(v);
    auto d = explicit_list(std::move(elems));
    d.tag_ = text;
    return d;
  }
  // explicit comma list
  if (text.find(',') != std::string::npos) {
    std::vector<Integer> elems;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto comma = text.find(',', pos);
      std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
      if (!is_digits(item)) raise(Errc::ParseError, "bad set list item '" + item + "'");
      elems.push_back(Integer(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    auto d = explicit_list(std::move(elems));
    d.tag_ = "list";
    return d;
  }

  // base name, optionally followed by +/- polynomial shift terms
  std::size_t cut = text.size();
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] == '+' || text[i] == '-') {
      cut = i;
      break;
    }
  }
  std::string base = text.substr(0, cut);
  SetDescriptor d;
  bool named = true;
  if (base.rfind("pow", 0) == 0 && is_digits(base.substr(3)))
    d = geometric(1, Integer(base.substr(3)));
  else if (base == "squares")
    d = polynomial({0, 0, 1});
  else if (base == "cubes")
    d = polynomial({0, 0, 0, 1});
  else if (base == "naturals" || base == "n")
    d = polynomial({0, 1});
  else if (base == "odds")
    d = polynomial({-1, 2});
  else if (base == "evens")
    d = polynomial({0, 2});
  else if (base == "factorial" || base == "n!")
    d = factorial();
  else
    named = false;
  if (!named) {
    // bare polynomial in n, e.g. "2n-1" or "n^2+2"
    std::vector<Integer> coeffs;
    std::size_t pos = 0;
    while (pos < text.size()) {
      int sign = text[pos] == '-' ? -1 : 1;
      if (text[pos] == '+' || text[pos] == '-') ++pos;
      std::size_t end = pos;
      while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
      parse_shift_term(text.substr(pos, end - pos), sign, coeffs);
      pos = end;
    }
    d = polynomial(std::move(coeffs));
    d.tag_ = text;
    return d;
  }
  if (base == "squares") d.tag_ = "squares";
  if (base == "cubes") d.tag_ = "cubes";
  if (base == "naturals" || base == "n") d.tag_ = "naturals";
  if (base == "odds") d.tag_ = "odds";
  if (base == "evens") d.tag_ = "evens";

  if (cut < text.size()) {
    std::vector<Integer> coeffs;
    std::size_t pos = cut;
    while (pos < text.size()) {
      int sign = text[pos] == '-' ? -1 : 1;
      if (text[pos] == '+' || text[pos] == '-') ++pos;
      std::size_t end = pos;
      while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
      parse_shift_term(text.substr(pos, end - pos), sign, coeffs);
      pos = end;
    }
    d = d.shifted(coeffs);
    d.tag_ = text;
  }
  return d;
}

}  // namespace nilfold
