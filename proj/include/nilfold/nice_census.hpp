#pragma once

#include <string>
#include <vector>

#include "nilfold/group.hpp"
#include "nilfold/integer_set.hpp"
#include "nilfold/orbit.hpp"

namespace nilfold {

// Census of R-nice sets over a rational grid of group elements.
// A subset A of R is nice for g when A and R\A are eps-separable by g; by
// the clustering argument these are exactly the unions of connected
// components of the orbit graph, so the census enumerates realized
// partitions and the subsets they generate.
struct NiceCensus {
  std::size_t n = 0;  // prefix length |R|
  Rational eps;
  Rational m_box;
  unsigned resolution = 0;
  Integer realized_nice_sets;
  Integer realized_partitions;
  Integer component_cap;  // ceil((1/eps)^m), asserted per sampled g
  Integer max_components_seen;
  std::string spec_id;
  std::string set_tag;
};

NiceCensus nice_census(const ValidatedSpec& spec, const SetDescriptor& e, std::size_t n,
                       const Rational& m_box, const Rational& eps, unsigned resolution,
                       unsigned threads = 1);

struct GrowthRow {
  std::size_t n = 0;
  Integer realized_nice_sets;
  Integer realized_partitions;
  Integer two_pow_n;
  Integer r_n;      // largest element of the prefix
  Integer rn_c3;    // r_n^c3 reference curve
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  Integer c3;  // 2 * c2 * m^2
  Rational eps;
  Rational m_box;
  unsigned resolution = 0;
  std::string spec_id;
  std::string set_tag;
};

// One pass over the g-grid computes every prefix length in [n_lo, n_hi].
GrowthTable growth_experiment(const ValidatedSpec& spec, const SetDescriptor& e,
                              std::size_t n_lo, std::size_t n_hi, const Rational& m_box,
                              const Rational& eps, unsigned resolution, unsigned threads = 1);

// CSV: N, realized_nice_sets, two_pow_N, rN_c3, eps, M, resolution, spec_id
std::string growth_to_csv(const GrowthTable& table);

// Per-g data shared with the exhaustive cross-check: which unordered pairs
// of R sit at distance >= eps.
struct PairSeparations {
  std::size_t n = 0;
  std::vector<bool> separated;  // index pair_index(i,j)
};
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);
PairSeparations pairwise_separations(const ValidatedSpec& spec, const GroupElement& g,
                                     const IntegerSet& r, const Rational& eps);

// All subset masks A of {0..n-1} with d(A, R\A) >= eps, from pair data.
std::vector<bool> separable_mask_table(const PairSeparations& pairs);
// Component labels (first-occurrence order) from pair data.
std::vector<unsigned> component_labels(const PairSeparations& pairs);

}  // namespace nilfold
