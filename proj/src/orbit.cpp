#include "nilfold/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "nilfold/errors.hpp"

namespace nilfold {

namespace {

// Distance to the nearest integer of a value already in [0,1).
Rational circle_norm(const Rational& frac) { return min(frac, Rational(1) - frac); }

}  // namespace

LatticeVector z_vector(const ValidatedSpec& spec, const GroupElement& x) {
  if (x.dim() != spec->m) raise(Errc::DimensionMismatch, "z_vector: wrong dimension");
  LatticeVector z{std::vector<Integer>(spec->m)};
  std::vector<Rational> zr(spec->m);
  for (std::size_t i = 1; i <= spec->m; ++i) {
    Rational shifted = x.coords[i - 1] + structure_eval(spec, i, x.coords, zr);
    z.entries[i - 1] = -shifted.floor();
    zr[i - 1] = Rational(z.entries[i - 1]);
  }
  return z;
}

ManifoldPoint reduce(const ValidatedSpec& spec, const GroupElement& x) {
  LatticeVector z = z_vector(spec, x);
  std::vector<Rational> zr;
  zr.reserve(z.dim());
  for (const auto& e : z.entries) zr.emplace_back(e);
  GroupElement p = multiply(spec, x, GroupElement{std::move(zr)});
  return ManifoldPoint{std::move(p.coords)};
}

Rational torus_distance(const ManifoldPoint& p, const ManifoldPoint& q) {
  if (p.dim() != q.dim()) raise(Errc::DimensionMismatch, "torus_distance: dimension mismatch");
  Rational best(0);
  for (std::size_t i = 0; i < p.dim(); ++i) {
    Rational diff = (p.coords[i] - q.coords[i]).abs();
    best = max(best, circle_norm(diff.frac()));
  }
  return best;
}

OrbitTable orbit(const ValidatedSpec& spec, const GroupElement& g, const GroupElement& base,
                 const IntegerSet& exponents) {
  OrbitTable table;
  table.spec_id = spec->id;
  table.generator = g;
  table.base = base;
  table.exponents = exponents.elements;
  table.points.reserve(exponents.size());
  // Binary powering with a shared square ladder; exponents are sorted so the
  // ladder is built once up to the top bit.
  std::vector<GroupElement> ladder = {g};
  auto power_via_ladder = [&](const Integer& n) {
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    while (ladder.size() < bits)
      ladder.push_back(multiply(spec, ladder.back(), ladder.back()));
    GroupElement acc = identity(spec);
    for (std::size_t b = 0; b < bits; ++b)
      if (mpz_tstbit(n.get_mpz_t(), b)) acc = multiply(spec, acc, ladder[b]);
    return acc;
  };
  for (const auto& a : exponents.elements) {
    GroupElement pw = sgn(a) == 0 ? identity(spec) : power_via_ladder(a);
    table.points.push_back(reduce(spec, multiply(spec, pw, base)));
  }
  return table;
}

OrbitTable orbit(const ValidatedSpec& spec, const GroupElement& g, const IntegerSet& exponents) {
  return orbit(spec, g, identity(spec), exponents);
}

Rational min_pair_distance(const OrbitTable& a, const OrbitTable& b) {
  if (a.points.empty() || b.points.empty()) raise(Errc::EmptyOrbit, "min_pair_distance: empty orbit");
  Rational best = torus_distance(a.points[0], b.points[0]);
  for (const auto& p : a.points)
    for (const auto& q : b.points) best = min(best, torus_distance(p, q));
  return best;
}

bool is_eps_separable(const ValidatedSpec& spec, const GroupElement& g, const IntegerSet& a,
                      const IntegerSet& b, const Rational& eps) {
  for (const auto& v : a.elements)
    if (b.contains(v)) raise(Errc::SetsNotDisjoint, "is_eps_separable: sets share " + v.get_str());
  if (a.elements.empty() || b.elements.empty()) return true;  // inf over empty set
  OrbitTable oa = orbit(spec, g, a);
  OrbitTable ob = orbit(spec, g, b);
  return min_pair_distance(oa, ob) >= eps;
}

std::vector<std::vector<Integer>> cluster_components(const OrbitTable& table,
                                                     const Rational& eps) {
  const std::size_t n = table.points.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (torus_distance(table.points[i], table.points[j]) < eps)
        parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<Integer>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks[find(i)].push_back(table.exponents[i]);
  std::vector<std::vector<Integer>> out;
  for (auto& [root, block] : blocks) out.push_back(std::move(block));
  // exponents arrive sorted, so each block is sorted; order blocks by least member
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

Rational recurrence_gap(const ValidatedSpec& spec, const GroupElement& g, const IntegerSet& r) {
  OrbitTable table = orbit(spec, g, r);
  ManifoldPoint origin{std::vector<Rational>(spec->m, Rational(0))};
  Rational best = torus_distance(table.points.at(0), origin);
  for (const auto& p : table.points) best = min(best, torus_distance(p, origin));
  return best;
}

Rational nilsequence_phase(const ValidatedSpec& spec, const GroupElement& g,
                           const GroupElement& base, const FunctionDescriptor& f,
                           const Integer& n) {
  if (f.frequency.size() != spec->m)
    raise(Errc::DimensionMismatch, "nilsequence: frequency vector has wrong dimension");
  ManifoldPoint p = reduce(spec, multiply(spec, power(spec, g, n), base));
  Rational phase(0);
  for (std::size_t i = 0; i < spec->m; ++i)
    phase += Rational(f.frequency[i]) * p.coords[i];
  return phase.frac();
}

std::complex<double> nilsequence_eval(const ValidatedSpec& spec, const GroupElement& g,
                                      const GroupElement& base, const FunctionDescriptor& f,
                                      const Integer& n) {
  double phase = nilsequence_phase(spec, g, base, f, n).to_double();
  double angle = 2.0 * std::numbers::pi * phase;
  return {std::cos(angle), std::sin(angle)};
}

std::string orbit_to_csv(const OrbitTable& table) {
  std::ostringstream out;
  out << "exponent";
  for (std::size_t i = 1; i <= (table.points.empty() ? 0 : table.points[0].dim()); ++i)
    out << ",coord_" << i;
  out << '\n';
  for (std::size_t r = 0; r < table.exponents.size(); ++r) {
    out << table.exponents[r].get_str();
    for (const auto& c : table.points[r].coords) out << ',' << c.str();
    out << '\n';
  }
  return out.str();
}

std::string orbit_to_json(const OrbitTable& table) {
  nlohmann::json j;
  j["spec"] = table.spec_id;
  auto coords_json = [](const std::vector<Rational>& cs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : cs) arr.push_back(c.str());
    return arr;
  };
  j["generator"] = coords_json(table.generator.coords);
  j["base"] = coords_json(table.base.coords);
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < table.exponents.size(); ++r) {
    nlohmann::json row;
    row["exponent"] = table.exponents[r].get_str();
    row["point"] = coords_json(table.points[r].coords);
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace nilfold
