#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilfold/integer_set.hpp"
#include "nilfold/rational.hpp"

namespace nilfold {

// Rotation by alpha on T^d. Coordinates here are always rational (irrational
// targets would enter as convergents and be flagged inexact per coordinate).
struct TorusRotation {
  std::vector<Rational> alpha;  // each in [0,1)
  std::vector<bool> coordinate_exact;

  std::size_t dim() const { return alpha.size(); }
};

TorusRotation make_rotation(std::vector<Rational> alpha);

// ||v . alpha|| on T^d (max metric), exact.
Rational rotation_point_norm(const TorusRotation& rot, const Integer& v);

// Witness that closure(A alpha) and closure(B alpha) stay apart. `exact`
// means the gap was evaluated over full residue classes of closed-form sets,
// so it holds for the infinite sets by periodicity; otherwise it is scoped
// to the truncation.
struct SeparationCertificate {
  TorusRotation rotation;
  Rational gap;
  std::size_t truncation = 0;
  bool exact = false;
  bool infinite_gap = false;  // an empty side: inf over the empty set
};

Rational rotation_gap_value(const TorusRotation& rot, const SetDescriptor& a,
                            const SetDescriptor& b, std::size_t truncation, bool* exact_out);

// Errors with SetsNotDisjoint when the truncated prefixes intersect.
SeparationCertificate rotation_gap(const TorusRotation& rot, const SetDescriptor& a,
                                   const SetDescriptor& b, std::size_t truncation);

struct SeparationSearchResult {
  bool found = false;
  SeparationCertificate best;  // on failure: the largest-gap attempt
};

// Rational-rotation search: dimension 1 upward, denominators ascending, then
// seeded random refinements. Ties prefer larger gap, then smaller denominator.
SeparationSearchResult find_separating_rotation(const SetDescriptor& a, const SetDescriptor& b,
                                                unsigned d_max, unsigned long denominator_budget,
                                                unsigned long random_budget,
                                                std::size_t truncation,
                                                std::uint64_t seed = 1);

struct WitnessResult {
  bool found = false;
  TorusRotation alpha;
  Rational eps;  // exact min ||t_n alpha|| for the returned alpha
  bool exact = false;
  // best eps seen per denominator, for failure reports
  std::vector<std::pair<unsigned long, Rational>> decay;
};

// Searches for alpha with min_n ||t_n alpha|| = eps > 0.
WitnessResult nonrecurrence_witness(const SetDescriptor& t, unsigned d_max,
                                    unsigned long denominator_budget, std::size_t truncation);

// The constructive partition of E = {r_n} u {r_n + t_n} into 2l pieces
// F_1..F_l, F'_1..F'_l, where T^d is covered by half-open cubes of side
// eps/2 in lexicographic order.
struct I0Partition {
  std::vector<IntegerSet> pieces;       // F_1..F_l then F'_1..F'_l (possibly empty)
  std::vector<std::string> labels;      // "F1".."Fl", "F1'".."Fl'"
  std::size_t ball_count = 0;           // l
  Rational ball_side;                   // eps/2
  TorusRotation rotation;
  Rational eps;
  std::vector<std::pair<Integer, Integer>> pairs;  // the (r_n, r_n + t_n) input
};

I0Partition i0_partition(const std::vector<std::pair<Integer, Integer>>& pairs,
                         const TorusRotation& alpha, const Rational& eps);

struct I0Verification {
  bool disjoint_cover = false;
  bool pairs_split = false;
  bool pieces_lacunary = false;
  bool cross_unions_lacunary = false;
  bool partner_gap_ok = false;  // each F_i vs F'_i separated with gap >= eps/2
  std::vector<std::string> failures;

  bool all_ok() const {
    return disjoint_cover && pairs_split && pieces_lacunary && cross_unions_lacunary &&
           partner_gap_ok;
  }
};

I0Verification verify_i0_partition(const I0Partition& p);

// Squaring lift: pairs (r_n^2, r_n^2 + 2 r_n t_n + t_n^2), the lacunarity of
// the shifted set u_n = 2 r_n t_n + t_n^2, and the per-index ratio chain
// u_{n+1}/u_n >= middle ratio >= r-ratio comparisons.
struct SquareLiftReport {
  std::vector<std::pair<Integer, Integer>> squared_pairs;
  Rational shifted_ratio;  // lacunary_ratio of {u_n}
  std::vector<bool> chain_middle_ok;  // u-ratio >= (2r+t)-ratio at each index
  std::vector<bool> chain_r_ok;       // u-ratio >= r-ratio at each index
  bool all_chain_ok() const;
};

SquareLiftReport square_lift(const std::vector<std::pair<Integer, Integer>>& r_and_t);

// E + F for finite F: a witness for each constant difference and a
// separating rotation for each shifted pair. Shifted copies of E can share
// elements (for E = {2^n}, E and E+2 both contain 4), in which case no
// rotation separates them; those pairs are certified through the
// constructive partition of E+i u E+j instead.
struct SumWithFiniteEntry {
  Integer i, j;
  WitnessResult witness;              // for the constant set {j - i}
  bool disjoint = false;              // E+i and E+j disjoint on the truncation
  SeparationSearchResult separation;  // E+i vs E+j
  bool partition_ok = false;          // i0_partition + verify on the pair set
  bool certified() const { return separation.found || partition_ok; }
};

std::vector<SumWithFiniteEntry> sum_with_finite(const SetDescriptor& e,
                                                const std::vector<Integer>& f,
                                                unsigned d_max,
                                                unsigned long denominator_budget,
                                                std::size_t truncation);

std::string certificate_to_json(const SeparationSearchResult& result);
std::string partition_to_json(const I0Partition& p, const I0Verification& v);

}  // namespace nilfold
