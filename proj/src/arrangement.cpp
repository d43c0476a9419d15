#include "nilfold/arrangement.hpp"

#include <algorithm>
#include <thread>

#include "json.hpp"
#include "nilfold/errors.hpp"
#include "nilfold/orbit.hpp"

namespace nilfold {

namespace upoly {

namespace {

void strip(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Remainder of a by b (b nonzero), exact rational division.
Poly remainder(Poly a, const Poly& b) {
  strip(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational factor = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    strip(a);
  }
  return a;
}

Poly divide_exact(Poly a, const Poly& b) {
  strip(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational factor = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    strip(a);
  }
  return q;
}

int sign_at(const Poly& p, const Rational& x) { return eval(p, x).sign(); }

// Sign variations of the Sturm chain at x.
std::size_t variations(const std::vector<Poly>& chain, const Rational& x) {
  std::size_t count = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  chain.push_back(p);
  Poly d = derivative(p);
  strip(d);
  if (d.empty()) return chain;
  chain.push_back(d);
  while (true) {
    Poly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

}  // namespace

Poly from_polynomial(const Polynomial& p) {
  if (p.arity() != 1) raise(Errc::DimensionMismatch, "expected a univariate polynomial");
  Poly out;
  for (const auto& [e, c] : p.terms()) {
    if (out.size() <= e[0]) out.resize(e[0] + 1, Rational(0));
    out[e[0]] = c;
  }
  strip(out);
  return out;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Poly derivative(const Poly& p) {
  Poly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(Rational(static_cast<long>(i)) * p[i]);
  strip(out);
  return out;
}

Poly gcd(Poly a, Poly b) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    Poly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;  // monic for stable output
  }
  return a;
}

Poly square_free(const Poly& p) {
  Poly q = p;
  strip(q);
  if (q.size() <= 1) return q;
  Poly g = gcd(q, derivative(q));
  if (g.size() <= 1) return q;
  return divide_exact(q, g);
}

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  strip(out);
  return out;
}

std::size_t count_roots(const Poly& p, const Rational& lo, const Rational& hi) {
  Poly sf = square_free(p);
  if (sf.empty()) raise(Errc::RootIsolationFailed, "zero polynomial has no isolated roots");
  if (eval(sf, lo).is_zero() || eval(sf, hi).is_zero())
    raise(Errc::RootIsolationFailed, "interval endpoint hits a root; perturb endpoints");
  auto chain = sturm_chain(sf);
  std::size_t vlo = variations(chain, lo);
  std::size_t vhi = variations(chain, hi);
  return vlo - vhi;  // distinct roots in (lo, hi]; hi is not a root
}

}  // namespace upoly

Arrangement make_arrangement(std::vector<Polynomial> polys, unsigned degree_bound,
                             std::vector<std::pair<Rational, Rational>> box) {
  for (const auto& p : polys)
    if (p.total_degree() > degree_bound)
      raise(Errc::DegreeTooHigh, "arrangement polynomial exceeds the degree bound");
  for (const auto& [lo, hi] : box)
    if (!(lo < hi)) raise(Errc::ParseError, "arrangement box side is empty");
  if (box.empty()) raise(Errc::ParseError, "arrangement box is empty");
  return Arrangement{std::move(polys), degree_bound, std::move(box)};
}

Integer region_bound(unsigned degree_bound, unsigned poly_count, unsigned dim) {
  Integer base = 2L * degree_bound * poly_count;
  return pow(base, dim);
}

RegionCensus count_regions_1d(const std::vector<Polynomial>& polys, const Rational& lo,
                              const Rational& hi) {
  if (!(lo < hi)) raise(Errc::ParseError, "empty interval");
  upoly::Poly combined = {Rational(1)};
  for (const auto& p : polys) {
    upoly::Poly up = upoly::square_free(upoly::from_polynomial(p));
    if (up.empty()) raise(Errc::RootIsolationFailed, "zero polynomial in arrangement");
    combined = upoly::multiply(combined, up);
  }
  // square-free again: roots shared between polynomials must count once
  std::size_t roots = upoly::count_roots(combined, lo, hi);
  RegionCensus census;
  census.region_count = Integer(static_cast<unsigned long>(roots + 1));
  census.method = "exact1d";
  census.stable = true;
  return census;
}

namespace {

struct GridSigns {
  std::vector<std::int8_t> signs;  // poly-major: signs[p * points + idx]
  std::vector<bool> boundary;
  std::size_t points = 0;
};

void run_chunks(std::size_t total, unsigned threads, const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 1 || total < 2 * threads) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& th : pool) th.join();
}

// Counts axis-adjacent components of non-boundary points with constant sign
// vector on a res^m grid.
Integer count_components(const GridSigns& grid, const std::vector<std::size_t>& shape) {
  const std::size_t n = grid.points;
  const std::size_t npolys = grid.signs.size() / std::max<std::size_t>(n, 1);
  std::vector<std::size_t> stride(shape.size(), 1);
  for (std::size_t d = 1; d < shape.size(); ++d) stride[d] = stride[d - 1] * shape[d - 1];
  auto same_signs = [&](std::size_t a, std::size_t b) {
    for (std::size_t p = 0; p < npolys; ++p)
      if (grid.signs[p * n + a] != grid.signs[p * n + b]) return false;
    return true;
  };
  std::vector<int> comp(n, -1);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> digits(shape.size());
  Integer count = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (grid.boundary[seed] || comp[seed] >= 0) continue;
    count += 1;
    comp[seed] = 1;
    stack.push_back(seed);
    while (!stack.empty()) {
      std::size_t at = stack.back();
      stack.pop_back();
      std::size_t rem = at;
      for (std::size_t d = 0; d < shape.size(); ++d) {
        digits[d] = rem % shape[d];
        rem /= shape[d];
      }
      for (std::size_t d = 0; d < shape.size(); ++d) {
        for (int dir : {-1, 1}) {
          if (dir < 0 && digits[d] == 0) continue;
          if (dir > 0 && digits[d] + 1 >= shape[d]) continue;
          std::size_t nb = dir < 0 ? at - stride[d] : at + stride[d];
          if (grid.boundary[nb] || comp[nb] >= 0) continue;
          if (!same_signs(at, nb)) continue;
          comp[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
  }
  return count;
}

std::vector<Rational> axis_samples(const Rational& lo, const Rational& hi, unsigned resolution) {
  std::vector<Rational> out;
  out.reserve(resolution);
  Rational step = (hi - lo) / Rational(static_cast<long>(resolution - 1));
  for (unsigned j = 0; j < resolution; ++j) out.push_back(lo + Rational(static_cast<long>(j)) * step);
  return out;
}

}  // namespace

RegionCensus count_regions_grid(const Arrangement& arr, unsigned resolution,
                                const Rational& delta, unsigned threads) {
  if (resolution < 8) raise(Errc::ParseError, "grid census needs resolution >= 8");
  if (delta.sign() <= 0) raise(Errc::ParseError, "grid census needs a positive guard");
  const std::size_t dim = arr.box.size();
  std::vector<std::vector<Rational>> axes;
  for (const auto& [lo, hi] : arr.box) axes.push_back(axis_samples(lo, hi, resolution));
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) total *= resolution;

  GridSigns grid;
  grid.points = total;
  grid.signs.assign(arr.polys.size() * total, 0);
  grid.boundary.assign(total, false);
  std::vector<std::uint8_t> boundary_raw(total, 0);

  run_chunks(total, threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<Rational> point(dim);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      std::size_t rem = idx;
      for (std::size_t d = 0; d < dim; ++d) {
        point[d] = axes[d][rem % resolution];
        rem /= resolution;
      }
      for (std::size_t p = 0; p < arr.polys.size(); ++p) {
        Rational value = arr.polys[p].eval(point);
        if (value.abs() < delta) {
          boundary_raw[idx] = 1;
          break;
        }
        grid.signs[p * total + idx] = static_cast<std::int8_t>(value.sign());
      }
    }
  });
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < total; ++i) {
    grid.boundary[i] = boundary_raw[i] != 0;
    if (grid.boundary[i]) ++excluded;
  }
  if (excluded == total) raise(Errc::AllPointsBoundary, "guard excluded every grid point");

  RegionCensus census;
  census.method = "grid";
  census.resolution = resolution;
  census.guard = delta;
  census.region_count = count_components(grid, std::vector<std::size_t>(dim, resolution));
  return census;
}

RegionCensus count_regions_stable(const Arrangement& arr, unsigned resolution,
                                  const Rational& delta, unsigned threads) {
  RegionCensus census = count_regions_grid(arr, resolution, delta, threads);
  RegionCensus rerun = count_regions_grid(arr, resolution, delta / Rational(2), threads);
  census.stable = census.region_count == rerun.region_count;
  return census;
}

RegionCensus separability_equation_census(const ValidatedSpec& spec, const IntegerSet& r,
                                          const Rational& m_box, const Rational& eps,
                                          unsigned resolution, unsigned threads) {
  if (resolution < 3 || resolution % 2 == 0)
    raise(Errc::GridTooCoarse, "separability census needs an odd resolution >= 3");
  if (m_box.sign() <= 0) raise(Errc::ParseError, "box bound must be positive");
  const std::size_t dim = spec->m;
  std::vector<Rational> axis = axis_samples(-m_box, m_box, resolution);
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) total *= resolution;
  const std::size_t npairs = r.size() * (r.size() - 1) / 2;

  GridSigns grid;
  grid.points = total;
  grid.signs.assign(std::max<std::size_t>(npairs, 1) * total, 0);
  grid.boundary.assign(total, false);
  std::vector<std::uint8_t> boundary_raw(total, 0);

  run_chunks(total, threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<Rational> coords(dim);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      std::size_t rem = idx;
      for (std::size_t d = 0; d < dim; ++d) {
        coords[d] = axis[rem % resolution];
        rem /= resolution;
      }
      GroupElement g{coords};
      OrbitTable table = orbit(spec, g, r);
      std::size_t pair = 0;
      for (std::size_t i = 0; i < table.points.size(); ++i)
        for (std::size_t j = i + 1; j < table.points.size(); ++j, ++pair) {
          Rational f = torus_distance(table.points[i], table.points[j]) - eps;
          int s = f.sign();
          if (s == 0) {
            boundary_raw[idx] = 1;
          } else if (npairs > 0) {
            grid.signs[pair * total + idx] = static_cast<std::int8_t>(s);
          }
        }
    }
  });
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < total; ++i) {
    grid.boundary[i] = boundary_raw[i] != 0;
    if (grid.boundary[i]) ++excluded;
  }
  if (excluded == total) raise(Errc::AllPointsBoundary, "all grid points on a distance-eps locus");

  RegionCensus census;
  census.method = "grid";
  census.resolution = resolution;
  census.guard = Rational(0);
  census.region_count = count_components(grid, std::vector<std::size_t>(dim, resolution));
  census.stable = true;  // exact signs, no guard to halve
  return census;
}

std::string census_to_json(const Arrangement& arr, const RegionCensus& census) {
  nlohmann::json j;
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& p : arr.polys) polys.push_back(p.human_str());
  j["polys"] = polys;
  nlohmann::json box = nlohmann::json::array();
  for (const auto& [lo, hi] : arr.box) box.push_back({lo.str(), hi.str()});
  j["box"] = box;
  j["method"] = census.method;
  j["resolution"] = census.resolution;
  j["delta"] = census.guard.str();
  j["count"] = census.region_count.get_str();
  j["stable"] = census.stable;
  j["bound"] = region_bound(arr.degree_bound, static_cast<unsigned>(arr.polys.size()),
                            static_cast<unsigned>(arr.box.size()))
                   .get_str();
  return j.dump(2) + "\n";
}

}  // namespace nilfold
