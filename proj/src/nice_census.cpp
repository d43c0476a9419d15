#include "nilfold/nice_census.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include "nilfold/errors.hpp"

namespace nilfold {

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

PairSeparations pairwise_separations(const ValidatedSpec& spec, const GroupElement& g,
                                     const IntegerSet& r, const Rational& eps) {
  OrbitTable table = orbit(spec, g, r);
  PairSeparations out;
  out.n = r.size();
  out.separated.assign(out.n * (out.n - 1) / 2, false);
  for (std::size_t i = 0; i < out.n; ++i)
    for (std::size_t j = i + 1; j < out.n; ++j)
      out.separated[pair_index(i, j, out.n)] =
          torus_distance(table.points[i], table.points[j]) >= eps;
  return out;
}

std::vector<unsigned> component_labels(const PairSeparations& pairs) {
  const std::size_t n = pairs.n;
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!pairs.separated[pair_index(i, j, n)]) {
        std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<unsigned> label(n, 0);
  std::vector<int> seen_order(n, -1);
  unsigned next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = find(i);
    if (seen_order[root] < 0) seen_order[root] = static_cast<int>(next++);
    label[i] = static_cast<unsigned>(seen_order[root]);
  }
  return label;
}

std::vector<bool> separable_mask_table(const PairSeparations& pairs) {
  const std::size_t n = pairs.n;
  if (n > 25) raise(Errc::ParseError, "exhaustive subset table capped at n = 25");
  // bad_bits[i] = elements within distance < eps of element i
  std::vector<std::uint32_t> bad_bits(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!pairs.separated[pair_index(i, j, n)]) {
        bad_bits[i] |= 1u << j;
        bad_bits[j] |= 1u << i;
      }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<bool> ok(static_cast<std::size_t>(1) << n, false);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    std::uint32_t reach = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) reach |= bad_bits[i];
    ok[mask] = (reach & (full & ~mask)) == 0;
    if (mask == full) break;
  }
  return ok;
}

namespace {

struct CensusAccumulator {
  // canonical partition -> nothing; partitions keyed by component label vector
  std::set<std::vector<unsigned>> partitions;
  std::set<std::uint32_t> nice_masks;
  std::size_t max_components = 0;

  void merge(const CensusAccumulator& o) {
    partitions.insert(o.partitions.begin(), o.partitions.end());
    nice_masks.insert(o.nice_masks.begin(), o.nice_masks.end());
    max_components = std::max(max_components, o.max_components);
  }
};

std::vector<Rational> census_axis(const Rational& m_box, unsigned resolution) {
  std::vector<Rational> axis;
  axis.reserve(resolution);
  Rational step = (m_box + m_box) / Rational(static_cast<long>(resolution - 1));
  for (unsigned j = 0; j < resolution; ++j)
    axis.push_back(-m_box + Rational(static_cast<long>(j)) * step);
  return axis;
}

Integer component_cap_value(const Rational& eps, std::size_t m) {
  // ceil((1/eps)^m)
  Rational inv = Rational(1) / eps;
  Rational pw = pow(inv, static_cast<unsigned long>(m));
  Integer fl = pw.floor();
  if (Rational(fl) < pw) fl += 1;
  return fl;
}

// Canonical partition signature and the nice-set masks it generates.
void record_partition(const std::vector<unsigned>& labels, std::size_t upto,
                      CensusAccumulator& acc) {
  std::vector<unsigned> canon(labels.begin(), labels.begin() + static_cast<long>(upto));
  // relabel by first occurrence so signatures are canonical per prefix
  std::vector<int> remap(upto, -1);
  unsigned next = 0;
  for (auto& l : canon) {
    if (remap[l] < 0) remap[l] = static_cast<int>(next++);
    l = static_cast<unsigned>(remap[l]);
  }
  acc.max_components = std::max<std::size_t>(acc.max_components, next);
  if (!acc.partitions.insert(canon).second) return;
  // every union of blocks is a nice set; enumerate via block bitmasks
  std::vector<std::uint32_t> block_bits(next, 0);
  for (std::size_t i = 0; i < upto; ++i) block_bits[canon[i]] |= 1u << i;
  for (std::uint32_t pick = 0; pick < (1u << next); ++pick) {
    std::uint32_t mask = 0;
    for (unsigned b = 0; b < next; ++b)
      if (pick & (1u << b)) mask |= block_bits[b];
    acc.nice_masks.insert(mask);
  }
}

struct GridCensusResult {
  std::vector<CensusAccumulator> per_n;  // index 0 -> n_lo
  std::size_t n_lo = 0, n_hi = 0;
};

GridCensusResult run_grid_census(const ValidatedSpec& spec, const SetDescriptor& e,
                                 std::size_t n_lo, std::size_t n_hi, const Rational& m_box,
                                 const Rational& eps, unsigned resolution, unsigned threads) {
  if (resolution < 1 || resolution % 2 == 0)
    raise(Errc::GridTooCoarse, "census grid resolution must be odd and positive");
  if (n_lo < 1 || n_lo > n_hi) raise(Errc::ParseError, "bad census prefix range");
  if (eps.sign() <= 0) raise(Errc::ParseError, "eps must be positive");

  IntegerSet full = e.prefix(n_hi);
  std::vector<Rational> axis = census_axis(m_box, resolution);
  const std::size_t dim = spec->m;
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) total *= resolution;

  const std::size_t n_counts = n_hi - n_lo + 1;
  std::vector<CensusAccumulator> global(n_counts);

  unsigned nthreads = std::max(1u, threads);
  std::vector<std::vector<CensusAccumulator>> locals(
      nthreads, std::vector<CensusAccumulator>(n_counts));
  auto work = [&](unsigned tid, std::size_t lo, std::size_t hi) {
    std::vector<Rational> coords(dim);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      std::size_t rem = idx;
      for (std::size_t d = 0; d < dim; ++d) {
        coords[d] = axis[rem % resolution];
        rem /= resolution;
      }
      GroupElement g{coords};
      PairSeparations pairs = pairwise_separations(spec, g, full, eps);
      for (std::size_t n = n_lo; n <= n_hi; ++n) {
        // restrict pair data to the first n elements
        PairSeparations sub;
        sub.n = n;
        sub.separated.assign(n * (n - 1) / 2, false);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            sub.separated[pair_index(i, j, n)] = pairs.separated[pair_index(i, j, n_hi)];
        record_partition(component_labels(sub), n, locals[tid][n - n_lo]);
      }
    }
  };
  if (nthreads == 1) {
    work(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (total + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      std::size_t lo = t * chunk;
      std::size_t hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, t, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  for (unsigned t = 0; t < nthreads; ++t)
    for (std::size_t i = 0; i < n_counts; ++i) global[i].merge(locals[t][i]);

  GridCensusResult out;
  out.per_n = std::move(global);
  out.n_lo = n_lo;
  out.n_hi = n_hi;
  return out;
}

}  // namespace

NiceCensus nice_census(const ValidatedSpec& spec, const SetDescriptor& e, std::size_t n,
                       const Rational& m_box, const Rational& eps, unsigned resolution,
                       unsigned threads) {
  GridCensusResult res = run_grid_census(spec, e, n, n, m_box, eps, resolution, threads);
  const CensusAccumulator& acc = res.per_n[0];
  NiceCensus census;
  census.n = n;
  census.eps = eps;
  census.m_box = m_box;
  census.resolution = resolution;
  census.realized_nice_sets = Integer(static_cast<unsigned long>(acc.nice_masks.size()));
  census.realized_partitions = Integer(static_cast<unsigned long>(acc.partitions.size()));
  census.component_cap = component_cap_value(eps, spec->m);
  census.max_components_seen = Integer(static_cast<unsigned long>(acc.max_components));
  census.spec_id = spec->id;
  census.set_tag = e.tag();
  if (census.max_components_seen > census.component_cap)
    raise(Errc::GridTooCoarse, "component count exceeded the (1/eps)^m cap");
  return census;
}

GrowthTable growth_experiment(const ValidatedSpec& spec, const SetDescriptor& e,
                              std::size_t n_lo, std::size_t n_hi, const Rational& m_box,
                              const Rational& eps, unsigned resolution, unsigned threads) {
  GridCensusResult res = run_grid_census(spec, e, n_lo, n_hi, m_box, eps, resolution, threads);
  GrowthTable table;
  GrowthExponents growth = z_growth_exponents(spec);
  Integer m2 = Integer(static_cast<unsigned long>(spec->m)) * Integer(static_cast<unsigned long>(spec->m));
  table.c3 = 2 * growth.c2 * m2;
  table.eps = eps;
  table.m_box = m_box;
  table.resolution = resolution;
  table.spec_id = spec->id;
  table.set_tag = e.tag();
  Integer cap = component_cap_value(eps, spec->m);
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const CensusAccumulator& acc = res.per_n[n - n_lo];
    if (Integer(static_cast<unsigned long>(acc.max_components)) > cap)
      raise(Errc::GridTooCoarse, "component count exceeded the (1/eps)^m cap");
    GrowthRow row;
    row.n = n;
    row.realized_nice_sets = Integer(static_cast<unsigned long>(acc.nice_masks.size()));
    row.realized_partitions = Integer(static_cast<unsigned long>(acc.partitions.size()));
    mpz_ui_pow_ui(row.two_pow_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
    row.r_n = e.term(n);
    if (!table.c3.fits_ulong_p()) raise(Errc::ParseError, "c3 exponent out of range");
    row.rn_c3 = pow(row.r_n, table.c3.get_ui());
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string growth_to_csv(const GrowthTable& table) {
  std::ostringstream out;
  out << "N,realized_nice_sets,two_pow_N,rN_c3,eps,M,resolution,spec_id\n";
  for (const auto& row : table.rows) {
    out << row.n << ',' << row.realized_nice_sets.get_str() << ','
        << row.two_pow_n.get_str() << ',' << row.rn_c3.get_str() << ',' << table.eps.str()
        << ',' << table.m_box.str() << ',' << table.resolution << ',' << table.spec_id
        << '\n';
  }
  return out.str();
}

}  // namespace nilfold
