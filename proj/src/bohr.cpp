#include "nilfold/bohr.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "nilfold/errors.hpp"
#include "nilfold/rng.hpp"

namespace nilfold {

namespace {

Rational circle_norm(const Rational& value) {
  Rational f = value.frac();
  return min(f, Rational(1) - f);
}

Integer lcm_denominator(const TorusRotation& rot) {
  Integer l = 1;
  for (const auto& a : rot.alpha) {
    Integer d = a.denominator();
    Integer g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  return l;
}

// max-metric distance between u*alpha and v*alpha, u,v integers (or residues).
Rational rotation_pair_distance(const TorusRotation& rot, const Integer& u, const Integer& v) {
  Rational best(0);
  Integer diff = u - v;
  for (const auto& a : rot.alpha) best = max(best, circle_norm(Rational(diff) * a));
  return best;
}

bool prefixes_disjoint(const SetDescriptor& a, const SetDescriptor& b, std::size_t truncation) {
  IntegerSet pa = a.prefix(truncation);
  IntegerSet pb = b.prefix(truncation);
  for (const auto& v : pa.elements)
    if (pb.contains(v)) return false;
  return true;
}

}  // namespace

TorusRotation make_rotation(std::vector<Rational> alpha) {
  TorusRotation rot;
  rot.alpha.reserve(alpha.size());
  for (auto& a : alpha) rot.alpha.push_back(a.frac());
  rot.coordinate_exact.assign(rot.alpha.size(), true);
  return rot;
}

Rational rotation_point_norm(const TorusRotation& rot, const Integer& v) {
  Rational best(0);
  for (const auto& a : rot.alpha) best = max(best, circle_norm(Rational(v) * a));
  return best;
}

namespace {

// min pairwise distance with an early exit at zero
Rational gap_over(const TorusRotation& rot, const std::vector<Integer>& as,
                  const std::vector<Integer>& bs) {
  Rational best = Rational(1);  // above any torus distance
  for (const auto& u : as)
    for (const auto& v : bs) {
      best = min(best, rotation_pair_distance(rot, u, v));
      if (best.is_zero()) return best;
    }
  return best;
}

std::vector<Integer> residue_vector(const SetDescriptor& d, const Integer& q) {
  auto res = d.residues_mod(q);
  return std::vector<Integer>(res->begin(), res->end());
}

bool sorted_intersect(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

}  // namespace

Rational rotation_gap_value(const TorusRotation& rot, const SetDescriptor& a,
                            const SetDescriptor& b, std::size_t truncation, bool* exact_out) {
  bool exact = a.closed_form() && b.closed_form();
  Rational best;
  if (exact) {
    Integer q = lcm_denominator(rot);
    best = gap_over(rot, residue_vector(a, q), residue_vector(b, q));
  } else {
    best = gap_over(rot, a.prefix(truncation).elements, b.prefix(truncation).elements);
  }
  if (exact_out) *exact_out = exact;
  return best;
}

SeparationCertificate rotation_gap(const TorusRotation& rot, const SetDescriptor& a,
                                   const SetDescriptor& b, std::size_t truncation) {
  SeparationCertificate cert;
  cert.rotation = rot;
  cert.truncation = truncation;
  if (a.known_empty() || b.known_empty()) {
    // inf over the empty set of pairs
    cert.infinite_gap = true;
    cert.gap = Rational(1, 2);
    cert.exact = true;
    return cert;
  }
  if (truncation == 0) raise(Errc::ParseError, "rotation_gap needs a positive truncation");
  if (!prefixes_disjoint(a, b, truncation))
    raise(Errc::SetsNotDisjoint, "rotation_gap: sets intersect within the truncation");
  cert.gap = rotation_gap_value(rot, a, b, truncation, &cert.exact);
  return cert;
}

namespace {

// Candidate comparison: larger gap first, then smaller denominator, then the
// lexicographically smaller alpha for determinism.
bool better_candidate(const SeparationCertificate& lhs, const SeparationCertificate& rhs) {
  if (lhs.gap != rhs.gap) return lhs.gap > rhs.gap;
  Integer ld = lcm_denominator(lhs.rotation);
  Integer rd = lcm_denominator(rhs.rotation);
  if (ld != rd) return ld < rd;
  for (std::size_t i = 0; i < std::min(lhs.rotation.dim(), rhs.rotation.dim()); ++i)
    if (lhs.rotation.alpha[i] != rhs.rotation.alpha[i])
      return lhs.rotation.alpha[i] < rhs.rotation.alpha[i];
  return lhs.rotation.dim() < rhs.rotation.dim();
}

// Enumerates alpha vectors with all coordinates p_i/q, skipping all-zero.
template <typename Fn>
void for_each_alpha(unsigned dim, unsigned long q, Fn&& fn) {
  std::vector<unsigned long> digits(dim, 0);
  while (true) {
    std::size_t at = 0;
    while (at < dim && digits[at] + 1 == q) digits[at++] = 0;
    if (at == dim) break;
    ++digits[at];
    std::vector<Rational> alpha;
    alpha.reserve(dim);
    for (unsigned long d : digits) alpha.push_back(Rational(static_cast<long>(d), static_cast<long>(q)));
    fn(make_rotation(std::move(alpha)));
  }
}

}  // namespace

SeparationSearchResult find_separating_rotation(const SetDescriptor& a, const SetDescriptor& b,
                                                unsigned d_max, unsigned long denominator_budget,
                                                unsigned long random_budget,
                                                std::size_t truncation, std::uint64_t seed) {
  if (truncation == 0) raise(Errc::ParseError, "search needs a positive truncation");
  SeparationSearchResult out;
  bool have = false;
  const bool exact = a.closed_form() && b.closed_form();
  std::vector<Integer> pa, pb;
  if (!exact) {
    pa = a.prefix(truncation).elements;
    pb = b.prefix(truncation).elements;
  }
  auto consider = [&](const TorusRotation& rot, const std::vector<Integer>& as,
                      const std::vector<Integer>& bs) {
    SeparationCertificate cert;
    cert.rotation = rot;
    cert.truncation = truncation;
    cert.exact = exact;
    cert.gap = gap_over(rot, as, bs);
    if (!have || better_candidate(cert, out.best)) {
      out.best = cert;
      have = true;
    }
  };
  for (unsigned dim = 1; dim <= d_max; ++dim) {
    for (unsigned long q = 2; q <= denominator_budget; ++q) {
      // residue sets depend on q alone, so hoist them out of the alpha sweep
      std::vector<Integer> ra = exact ? residue_vector(a, Integer(static_cast<long>(q))) : pa;
      std::vector<Integer> rb = exact ? residue_vector(b, Integer(static_cast<long>(q))) : pb;
      if (exact && sorted_intersect(ra, rb)) {
        // a shared residue pins every denominator-q rotation at gap zero
        std::vector<Rational> first(dim, Rational(0));
        first[0] = Rational(1, static_cast<long>(q));
        consider(make_rotation(std::move(first)), ra, rb);
        continue;
      }
      for_each_alpha(dim, q, [&](const TorusRotation& rot) { consider(rot, ra, rb); });
    }
    if (have && out.best.gap.sign() > 0) break;  // d=1 witnesses preferred
  }
  if (!(have && out.best.gap.sign() > 0) && random_budget > 0) {
    DetRng rng(seed);
    for (unsigned long i = 0; i < random_budget; ++i) {
      unsigned dim = 1 + static_cast<unsigned>(rng.next_below(d_max));
      unsigned long q = denominator_budget + 1 + rng.next_below(denominator_budget * 4 + 1);
      std::vector<Rational> alpha;
      for (unsigned d = 0; d < dim; ++d)
        alpha.push_back(Rational(static_cast<long>(1 + rng.next_below(q - 1)), static_cast<long>(q)));
      TorusRotation rot = make_rotation(std::move(alpha));
      if (exact) {
        Integer denom = lcm_denominator(rot);
        consider(rot, residue_vector(a, denom), residue_vector(b, denom));
      } else {
        consider(rot, pa, pb);
      }
    }
  }
  out.found = have && out.best.gap.sign() > 0;
  return out;
}

WitnessResult nonrecurrence_witness(const SetDescriptor& t, unsigned d_max,
                                    unsigned long denominator_budget, std::size_t truncation) {
  WitnessResult out;
  bool have = false;
  const bool exact = t.closed_form();
  std::vector<Integer> prefix_elems;
  if (!exact) prefix_elems = t.prefix(truncation).elements;
  auto eps_for = [&](const TorusRotation& rot, const std::vector<Integer>& elems) {
    Rational best = Rational(1);
    for (const auto& v : elems) {
      best = min(best, rotation_point_norm(rot, v));
      if (best.is_zero()) break;
    }
    return best;
  };
  for (unsigned dim = 1; dim <= d_max; ++dim) {
    for (unsigned long q = 2; q <= denominator_budget; ++q) {
      std::vector<Integer> elems =
          exact ? residue_vector(t, Integer(static_cast<long>(q))) : prefix_elems;
      Rational q_best(0);
      TorusRotation q_alpha;
      bool q_have = false;
      if (exact && std::binary_search(elems.begin(), elems.end(), Integer(0))) {
        // residue 0 recurs no matter the rotation numerators
        q_have = true;
        std::vector<Rational> first(dim, Rational(0));
        first[0] = Rational(1, static_cast<long>(q));
        q_alpha = make_rotation(std::move(first));
      } else {
        for_each_alpha(dim, q, [&](const TorusRotation& rot) {
          Rational eps = eps_for(rot, elems);
          if (!q_have || eps > q_best) {
            q_best = eps;
            q_alpha = rot;
            q_have = true;
          }
        });
      }
      if (dim == 1) out.decay.emplace_back(q, q_best);
      if (q_have && (!have || q_best > out.eps ||
                     (q_best == out.eps && lcm_denominator(q_alpha) < lcm_denominator(out.alpha)))) {
        out.eps = q_best;
        out.alpha = q_alpha;
        have = true;
      }
    }
    if (have && out.eps.sign() > 0) break;
  }
  out.found = have && out.eps.sign() > 0;
  out.exact = exact;
  return out;
}

namespace {

// Lexicographic index of the half-open cube of side `side` containing the
// orbit point v*alpha on T^d.
std::size_t ball_index(const TorusRotation& rot, const Rational& side, const Integer& v,
                       std::size_t per_axis) {
  std::size_t idx = 0;
  for (std::size_t d = rot.dim(); d-- > 0;) {
    Rational coord = (Rational(v) * rot.alpha[d]).frac();
    Integer cell = (coord / side).floor();
    std::size_t c = std::min<std::size_t>(cell.get_ui(), per_axis - 1);
    idx = idx * per_axis + c;
  }
  return idx;
}

}  // namespace

I0Partition i0_partition(const std::vector<std::pair<Integer, Integer>>& pairs,
                         const TorusRotation& alpha, const Rational& eps) {
  if (eps.sign() <= 0 || eps > Rational(1)) raise(Errc::ParseError, "eps must be in (0, 1]");
  for (const auto& [r, s] : pairs) {
    Integer t = s - r;
    if (sgn(t) <= 0) raise(Errc::ParseError, "pairs must satisfy r_n < r_n + t_n");
    if (rotation_point_norm(alpha, t) < eps)
      raise(Errc::WitnessInvalid,
            "||t_n alpha|| < eps for t_n = " + t.get_str() + "; witness does not separate");
  }

  I0Partition part;
  part.rotation = alpha;
  part.eps = eps;
  part.pairs = pairs;
  part.ball_side = eps / Rational(2);
  // per-axis cube count ceil(2/eps), l = that^d
  Rational per = Rational(2) / eps;
  Integer per_floor = per.floor();
  if (Rational(per_floor) < per) per_floor += 1;
  std::size_t per_axis = per_floor.get_ui();
  std::size_t balls = 1;
  for (std::size_t d = 0; d < alpha.dim(); ++d) balls *= per_axis;
  part.ball_count = balls;

  // elements and their partner links
  std::vector<Integer> elements;
  for (const auto& [r, s] : pairs) {
    elements.push_back(r);
    elements.push_back(s);
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto index_of = [&](const Integer& v) {
    return static_cast<std::size_t>(
        std::lower_bound(elements.begin(), elements.end(), v) - elements.begin());
  };
  std::vector<std::vector<std::size_t>> partners(elements.size());
  for (const auto& [r, s] : pairs) {
    partners[index_of(r)].push_back(index_of(s));
    partners[index_of(s)].push_back(index_of(r));
  }

  std::vector<int> assignment(elements.size(), -1);  // piece index in [0, 2l)
  for (std::size_t ball = 0; ball < balls; ++ball) {
    // F_{ball}: unassigned elements whose orbit point lies in this cube
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (assignment[i] >= 0) continue;
      if (ball_index(alpha, part.ball_side, elements[i], per_axis) == ball) {
        assignment[i] = static_cast<int>(ball);
        fresh.push_back(i);
      }
    }
    // partners of fresh members are forced into F'_{ball}
    for (std::size_t i : fresh)
      for (std::size_t p : partners[i])
        if (assignment[p] < 0) assignment[p] = static_cast<int>(balls + ball);
  }

  part.pieces.assign(2 * balls, IntegerSet{});
  part.labels.resize(2 * balls);
  for (std::size_t b = 0; b < balls; ++b) {
    part.labels[b] = "F" + std::to_string(b + 1);
    part.labels[balls + b] = "F" + std::to_string(b + 1) + "'";
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    part.pieces[static_cast<std::size_t>(assignment[i])].elements.push_back(elements[i]);
    part.pieces[static_cast<std::size_t>(assignment[i])].tag = "i0_piece";
  }
  return part;
}

I0Verification verify_i0_partition(const I0Partition& p) {
  I0Verification v;
  // (1) disjoint cover of the pair elements
  std::set<Integer> input;
  for (const auto& [r, s] : p.pairs) {
    input.insert(r);
    input.insert(s);
  }
  std::set<Integer> covered;
  bool overlap = false;
  for (const auto& piece : p.pieces)
    for (const auto& e : piece.elements)
      if (!covered.insert(e).second) overlap = true;
  v.disjoint_cover = !overlap && covered == input;
  if (!v.disjoint_cover) v.failures.push_back("pieces do not form a disjoint cover");

  // (2) no piece contains both members of a pair
  v.pairs_split = true;
  for (const auto& piece : p.pieces)
    for (const auto& [r, s] : p.pairs)
      if (piece.contains(r) && piece.contains(s)) v.pairs_split = false;
  if (!v.pairs_split) v.failures.push_back("a piece contains both members of a pair");

  // (3) lacunarity of pieces and cross unions (F_i with F_j etc., skipping
  // the partner pairs F_i / F_i' which are handled by the gap check)
  auto ratio_ok = [](const IntegerSet& s) { return prefix_lacunary_consistent(s); };
  v.pieces_lacunary = true;
  for (const auto& piece : p.pieces)
    if (!ratio_ok(piece)) v.pieces_lacunary = false;
  if (!v.pieces_lacunary) v.failures.push_back("a piece is not lacunary on the prefix");

  const std::size_t l = p.ball_count;
  v.cross_unions_lacunary = true;
  for (std::size_t i = 0; i < p.pieces.size(); ++i)
    for (std::size_t j = i + 1; j < p.pieces.size(); ++j) {
      if (j == i + l) continue;  // F_i vs F_i'
      std::vector<Integer> merged;
      std::merge(p.pieces[i].elements.begin(), p.pieces[i].elements.end(),
                 p.pieces[j].elements.begin(), p.pieces[j].elements.end(),
                 std::back_inserter(merged));
      if (merged.size() < 2) continue;
      IntegerSet u{merged, "union"};
      if (!ratio_ok(u)) {
        v.cross_unions_lacunary = false;
        v.failures.push_back("union " + p.labels[i] + " u " + p.labels[j] + " is not lacunary");
      }
    }

  // (4) F_i vs F_i' separated by alpha with gap >= eps/2
  v.partner_gap_ok = true;
  for (std::size_t i = 0; i < l; ++i) {
    const auto& fi = p.pieces[i];
    const auto& fip = p.pieces[i + l];
    if (fi.elements.empty() || fip.elements.empty()) continue;
    Rational gap = Rational(1);
    for (const auto& u : fi.elements)
      for (const auto& w : fip.elements)
        gap = min(gap, rotation_pair_distance(p.rotation, u, w));
    if (gap < p.eps / Rational(2)) {
      v.partner_gap_ok = false;
      v.failures.push_back("gap between " + p.labels[i] + " and " + p.labels[i + l] +
                           " fell below eps/2");
    }
  }
  return v;
}

bool SquareLiftReport::all_chain_ok() const {
  for (bool b : chain_middle_ok)
    if (!b) return false;
  for (bool b : chain_r_ok)
    if (!b) return false;
  return true;
}

SquareLiftReport square_lift(const std::vector<std::pair<Integer, Integer>>& r_and_t) {
  if (r_and_t.size() < 2) raise(Errc::TooShort, "square_lift needs at least two pairs");
  std::vector<Integer> r, t;
  for (const auto& [rv, tv] : r_and_t) {
    if (sgn(rv) <= 0 || sgn(tv) <= 0)
      raise(Errc::ParseError, "square_lift needs positive r_n and t_n");
    r.push_back(rv);
    t.push_back(tv);
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] <= r[i - 1])
      raise(Errc::HypothesisViolated, "{r_n} must be strictly increasing");
    if (t[i] < t[i - 1])
      raise(Errc::HypothesisViolated, "{t_n} must be nondecreasing (proof hypothesis)");
  }
  if (!prefix_lacunary_consistent(IntegerSet{r, "r"}))
    raise(Errc::HypothesisViolated, "{r_n} is not lacunary on the prefix");
  // t_n / r_n must tend down: nonincreasing over the tail half, minimum at the end
  std::size_t start = r.size() / 2;
  Rational last(t.back(), r.back());
  for (std::size_t i = start; i + 1 < r.size(); ++i)
    if (Rational(t[i + 1], r[i + 1]) > Rational(t[i], r[i]))
      raise(Errc::HypothesisViolated, "t_n/r_n is not tending down on the tail");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (Rational(t[i], r[i]) < last)
      raise(Errc::HypothesisViolated, "t_n/r_n is not minimal at the prefix end");

  SquareLiftReport rep;
  std::vector<Integer> shifted;
  for (std::size_t i = 0; i < r.size(); ++i) {
    Integer u = 2 * r[i] * t[i] + t[i] * t[i];
    rep.squared_pairs.emplace_back(r[i] * r[i], r[i] * r[i] + u);
    shifted.push_back(u);
  }
  rep.shifted_ratio = lacunary_ratio(IntegerSet{shifted, "shifted"});
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    Rational u_ratio(shifted[i + 1], shifted[i]);
    Rational mid_ratio(2 * r[i + 1] + t[i + 1], 2 * r[i] + t[i]);
    Rational r_ratio(r[i + 1], r[i]);
    rep.chain_middle_ok.push_back(u_ratio >= mid_ratio);
    rep.chain_r_ok.push_back(u_ratio >= r_ratio);
  }
  return rep;
}

std::vector<SumWithFiniteEntry> sum_with_finite(const SetDescriptor& e,
                                                const std::vector<Integer>& f,
                                                unsigned d_max,
                                                unsigned long denominator_budget,
                                                std::size_t truncation) {
  std::vector<SumWithFiniteEntry> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      SumWithFiniteEntry entry;
      entry.i = f[i];
      entry.j = f[j];
      Integer delta = f[j] - f[i];
      if (sgn(delta) < 0) delta = -delta;
      // the constant set {delta}: a closed-form polynomial of degree 0
      SetDescriptor constant = SetDescriptor::polynomial({delta});
      entry.witness = nonrecurrence_witness(constant, d_max,
                                            std::max<unsigned long>(denominator_budget,
                                                                    2 * delta.get_ui()),
                                            truncation);
      entry.disjoint = prefixes_disjoint(e.shifted(f[i]), e.shifted(f[j]), truncation);
      entry.separation = find_separating_rotation(e.shifted(f[i]), e.shifted(f[j]), d_max,
                                                  denominator_budget, 0, truncation);
      if (entry.witness.found) {
        std::vector<std::pair<Integer, Integer>> pairs;
        SetDescriptor lo = e.shifted(f[i] < f[j] ? f[i] : f[j]);
        for (std::size_t n = 1; n <= truncation; ++n)
          pairs.emplace_back(lo.term(n), lo.term(n) + delta);
        I0Partition part = i0_partition(pairs, entry.witness.alpha, entry.witness.eps);
        entry.partition_ok = verify_i0_partition(part).all_ok();
      }
      out.push_back(std::move(entry));
    }
  return out;
}

namespace {

nlohmann::json rotation_json(const TorusRotation& rot) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : rot.alpha) arr.push_back(a.str());
  return arr;
}

}  // namespace

std::string certificate_to_json(const SeparationSearchResult& result) {
  nlohmann::json j;
  j["found"] = result.found;
  nlohmann::json cert;
  cert["alpha"] = rotation_json(result.best.rotation);
  cert["gap"] = result.best.infinite_gap ? "inf" : result.best.gap.str();
  cert["truncation"] = result.best.truncation;
  cert["exact"] = result.best.exact;
  j[result.found ? "certificate" : "best_attempt"] = cert;
  return j.dump(2) + "\n";
}

std::string partition_to_json(const I0Partition& p, const I0Verification& v) {
  nlohmann::json j;
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& piece : p.pieces) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : piece.elements) arr.push_back(e.get_str());
    pieces.push_back(arr);
  }
  j["pieces"] = pieces;
  j["labels"] = p.labels;
  j["rotation"] = rotation_json(p.rotation);
  j["eps"] = p.eps.str();
  j["ball_side"] = p.ball_side.str();
  nlohmann::json checks;
  checks["disjoint_cover"] = v.disjoint_cover;
  checks["pairs_split"] = v.pairs_split;
  checks["pieces_lacunary"] = v.pieces_lacunary;
  checks["cross_unions_lacunary"] = v.cross_unions_lacunary;
  checks["partner_gap_ok"] = v.partner_gap_ok;
  j["checks"] = checks;
  j["failures"] = v.failures;
  j["verified"] = v.all_ok();
  return j.dump(2) + "\n";
}

}  // namespace nilfold
