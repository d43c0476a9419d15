// nilfold command line: orbit tables, nice-set censuses, Bohr separation,
// I0 partitions, region counting, and set classification. All persisted
// numerics are exact rationals; outputs are byte-stable for a fixed seed.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilfold/arrangement.hpp"
#include "nilfold/bohr.hpp"
#include "nilfold/errors.hpp"
#include "nilfold/group.hpp"
#include "nilfold/nice_census.hpp"
#include "nilfold/orbit.hpp"

namespace {

using namespace nilfold;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

ValidatedSpec load_spec(const std::string& name, bool allow_degree_k) {
  if (auto reg = registry_spec(name)) return std::move(*reg);
  std::ifstream in(name);
  if (!in) raise(Errc::ParseError, "unknown spec '" + name + "' (not a registry name or file)");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return validate_spec(parse_spec(buffer.str(), name, allow_degree_k));
}

std::vector<Rational> parse_rational_vector(const std::string& text) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    out.push_back(Rational::parse(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) raise(Errc::ParseError, "cannot open output file '" + out_path + "'");
  out << payload;
}

// Ranges like "4..12" or a single "7".
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    std::size_t v = std::stoul(text);
    return {v, v};
  }
  return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
}

// "lo,hi;lo,hi" per axis.
std::vector<std::pair<Rational, Rational>> parse_box(const std::string& text) {
  std::vector<std::pair<Rational, Rational>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto semi = text.find(';', pos);
    std::string side = text.substr(pos, semi == std::string::npos ? semi : semi - pos);
    auto comma = side.find(',');
    if (comma == std::string::npos) raise(Errc::ParseError, "box side needs 'lo,hi'");
    out.emplace_back(Rational::parse(side.substr(0, comma)),
                     Rational::parse(side.substr(comma + 1)));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return out;
}

// Human polynomial syntax over named variables: "x^2 - y^2 - 1", "1/2*x*y".
Polynomial parse_human_poly(const std::string& text, const std::vector<std::string>& vars) {
  Polynomial out(vars);
  std::string squeezed;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) squeezed += c;
  if (squeezed.empty()) raise(Errc::ParseError, "empty polynomial");
  std::size_t pos = 0;
  while (pos < squeezed.size()) {
    int sign = 1;
    while (pos < squeezed.size() && (squeezed[pos] == '+' || squeezed[pos] == '-')) {
      if (squeezed[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    while (end < squeezed.size() && squeezed[end] != '+' && squeezed[end] != '-') ++end;
    std::string term = squeezed.substr(pos, end - pos);
    if (term.empty()) raise(Errc::ParseError, "dangling sign in polynomial '" + text + "'");
    pos = end;

    Rational coeff(sign);
    Exponents exps(vars.size(), 0);
    std::size_t tpos = 0;
    bool saw_factor = false;
    while (tpos < term.size()) {
      auto star = term.find('*', tpos);
      std::string factor = term.substr(tpos, star == std::string::npos ? star : star - tpos);
      tpos = star == std::string::npos ? term.size() : star + 1;
      if (factor.empty()) raise(Errc::ParseError, "empty factor in '" + term + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff *= Rational::parse(factor);
      } else {
        unsigned exp = 1;
        auto caret = factor.find('^');
        std::string var = factor;
        if (caret != std::string::npos) {
          exp = static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
          var = factor.substr(0, caret);
        }
        auto it = std::find(vars.begin(), vars.end(), var);
        if (it == vars.end()) raise(Errc::ParseError, "unknown variable '" + var + "'");
        exps[static_cast<std::size_t>(it - vars.begin())] += exp;
      }
      saw_factor = true;
    }
    if (!saw_factor) raise(Errc::ParseError, "empty term in polynomial");
    out.add_term(exps, coeff);
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto at = text.find(sep, pos);
    out.push_back(text.substr(pos, at == std::string::npos ? at : at - pos));
    if (at == std::string::npos) break;
    pos = at + 1;
  }
  return out;
}

struct OrbitArgs {
  std::string spec = "heisenberg";
  std::string g;
  std::string base;
  std::string set = "1..8";
  std::size_t count = 16;
  std::string format = "csv";
  std::string out;
  bool allow_degree_k = false;
};

int run_orbit(const OrbitArgs& a) {
  ValidatedSpec spec = load_spec(a.spec, a.allow_degree_k);
  GroupElement g = make_element(spec, parse_rational_vector(a.g));
  GroupElement base = a.base.empty() ? identity(spec)
                                     : make_element(spec, parse_rational_vector(a.base));
  SetDescriptor desc = SetDescriptor::parse(a.set);
  IntegerSet set = desc.prefix(desc.known_size().value_or(a.count));
  OrbitTable table = orbit(spec, g, base, set);
  emit(a.format == "json" ? orbit_to_json(table) : orbit_to_csv(table), a.out);
  return kExitOk;
}

struct CensusArgs {
  std::string spec = "heisenberg";
  std::string set = "squares";
  std::string n_range = "4..12";
  std::string m_box = "1";
  std::string eps = "1/4";
  unsigned resolution = 21;
  unsigned threads = 1;
  std::string out;
  bool allow_degree_k = false;
};

int run_nice_census(const CensusArgs& a) {
  ValidatedSpec spec = load_spec(a.spec, a.allow_degree_k);
  auto [n_lo, n_hi] = parse_range(a.n_range);
  GrowthTable table = growth_experiment(spec, SetDescriptor::parse(a.set), n_lo, n_hi,
                                        Rational::parse(a.m_box), Rational::parse(a.eps),
                                        a.resolution, a.threads);
  emit(growth_to_csv(table), a.out);
  return kExitOk;
}

struct SeparateArgs {
  std::string a, b;
  unsigned d_max = 2;
  unsigned long den = 64;
  unsigned long random_budget = 0;
  std::size_t trunc = 20;
  std::uint64_t seed = 1;
  std::string out;
};

int run_separate(const SeparateArgs& a) {
  SetDescriptor da = SetDescriptor::parse(a.a);
  SetDescriptor db = SetDescriptor::parse(a.b);
  // identical inputs are a usage error; partial overlap is a legitimate
  // (hopeless) search and reports NotFound
  if (da.prefix(a.trunc).elements == db.prefix(a.trunc).elements)
    raise(Errc::SetsNotDisjoint, "--A and --B describe the same set");
  auto result = find_separating_rotation(da, db, a.d_max, a.den, a.random_budget, a.trunc,
                                         a.seed);
  emit(certificate_to_json(result), a.out);
  return kExitOk;
}

struct I0Args {
  std::string r = "pow2";
  std::string t = "2n-1";
  std::size_t count = 15;
  std::string alpha;
  std::string eps;
  unsigned d_max = 1;
  unsigned long den = 64;
  std::string out;
};

int run_i0(const I0Args& a) {
  SetDescriptor r = SetDescriptor::parse(a.r);
  SetDescriptor t = SetDescriptor::parse(a.t);
  std::vector<std::pair<Integer, Integer>> pairs;
  for (std::size_t n = 1; n <= a.count; ++n)
    pairs.emplace_back(r.term(n), r.term(n) + t.term(n));

  if (a.alpha.empty() != a.eps.empty())
    raise(Errc::ParseError, "--alpha and --eps must be given together");
  TorusRotation alpha;
  Rational eps;
  if (!a.alpha.empty()) {
    alpha = make_rotation(parse_rational_vector(a.alpha));
    eps = Rational::parse(a.eps);
  } else {
    auto witness = nonrecurrence_witness(t, a.d_max, a.den, a.count);
    if (!witness.found) {
      nlohmann::json j;
      j["found"] = false;
      j["reason"] = "no nonrecurrence witness for {t_n} within the search budget";
      emit(j.dump(2) + "\n", a.out);
      return kExitPropertyFailure;
    }
    alpha = witness.alpha;
    eps = witness.eps;
  }
  I0Partition part = i0_partition(pairs, alpha, eps);
  I0Verification ver = verify_i0_partition(part);
  emit(partition_to_json(part, ver), a.out);
  return ver.all_ok() ? kExitOk : kExitPropertyFailure;
}

struct RegionArgs {
  std::string polys;
  std::string box;
  std::string interval;
  unsigned degree_bound = 2;
  unsigned resolution = 601;
  std::string delta = "1/1000";
  std::string method = "grid";
  unsigned threads = 1;
  std::string out;
};

int run_regions(const RegionArgs& a) {
  std::vector<std::string> poly_texts = split(a.polys, ';');
  if (a.method == "exact1d") {
    auto vars = x_vars(1);
    std::vector<Polynomial> polys;
    for (const auto& t : poly_texts) polys.push_back(parse_human_poly(t, {"x"}));
    auto iv = parse_box(a.interval.empty() ? a.box : a.interval);
    if (iv.size() != 1) raise(Errc::ParseError, "exact1d needs a single interval");
    RegionCensus census = count_regions_1d(polys, iv[0].first, iv[0].second);
    Arrangement arr = make_arrangement(polys, a.degree_bound, iv);
    emit(census_to_json(arr, census), a.out);
    return kExitOk;
  }
  auto box = parse_box(a.box);
  std::vector<std::string> vars;
  const std::vector<std::string> names = {"x", "y", "z", "w"};
  if (box.size() > names.size()) raise(Errc::ParseError, "grid census supports up to 4 axes");
  for (std::size_t i = 0; i < box.size(); ++i) vars.push_back(names[i]);
  std::vector<Polynomial> polys;
  for (const auto& t : poly_texts) polys.push_back(parse_human_poly(t, vars));
  Arrangement arr = make_arrangement(polys, a.degree_bound, box);
  RegionCensus census =
      count_regions_stable(arr, a.resolution, Rational::parse(a.delta), a.threads);
  emit(census_to_json(arr, census), a.out);
  return kExitOk;
}

struct ClassifyArgs {
  std::string set = "squares";
  std::size_t n = 100;
  std::string threshold = "1/10";
  std::string out;
};

int run_classify(const ClassifyArgs& a) {
  SetDescriptor d = SetDescriptor::parse(a.set);
  IntegerSet prefix = d.prefix(a.n);
  nlohmann::json j;
  j["set"] = d.tag();
  j["N"] = a.n;
  j["lacunary_ratio"] = lacunary_ratio(prefix).str();
  SublacunarityReport rep = sublacunarity_slope(prefix, Rational::parse(a.threshold));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", rep.end_slope);
  j["end_slope"] = buf;
  std::snprintf(buf, sizeof(buf), "%.12f", rep.lsq_slope);
  j["lsq_slope"] = buf;
  j["threshold"] = rep.threshold.str();
  j["sublacunary_consistent"] = rep.consistent;
  j["prefix_lacunary_consistent"] = prefix_lacunary_consistent(prefix);
  emit(j.dump(2) + "\n", a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic nilmanifold orbits and interpolation-set experiments"};
  // config: flat key=value entries under a [subcommand] section; flags win
  app.set_config("--config", "", "config file with [subcommand] sections of key=value lines");
  app.require_subcommand(1);

  OrbitArgs orbit_args;
  auto* orbit_cmd = app.add_subcommand("orbit", "reduced orbit table of g^A * base");
  orbit_cmd->add_option("--spec", orbit_args.spec, "registry name or spec file");
  orbit_cmd->add_option("--g", orbit_args.g, "generator coordinates p/q,...")->required();
  orbit_cmd->add_option("--base", orbit_args.base, "base point coordinates (default 1_X)");
  orbit_cmd->add_option("--set", orbit_args.set, "exponent set descriptor");
  orbit_cmd->add_option("--count", orbit_args.count, "prefix length for closed-form sets");
  orbit_cmd->add_option("--format", orbit_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  orbit_cmd->add_option("--out", orbit_args.out, "output path (default stdout)");
  orbit_cmd->add_flag("--allow-degree-k", orbit_args.allow_degree_k,
                      "accept total degree k when per-block degrees fit");

  CensusArgs census_args;
  auto* census_cmd = app.add_subcommand("nice-census", "R-nice-set growth experiment");
  census_cmd->add_option("--spec", census_args.spec);
  census_cmd->add_option("--set", census_args.set, "integer set descriptor");
  census_cmd->add_option("--N", census_args.n_range, "prefix length or range lo..hi");
  census_cmd->add_option("--M", census_args.m_box, "coordinate box bound");
  census_cmd->add_option("--eps", census_args.eps, "separation threshold (rational)");
  census_cmd->add_option("--res", census_args.resolution, "odd grid resolution per axis");
  census_cmd->add_option("--threads", census_args.threads);
  census_cmd->add_option("--out", census_args.out);
  census_cmd->add_flag("--allow-degree-k", census_args.allow_degree_k);

  SeparateArgs sep_args;
  auto* sep_cmd = app.add_subcommand("separate", "search for a separating Bohr rotation");
  sep_cmd->add_option("--A", sep_args.a)->required();
  sep_cmd->add_option("--B", sep_args.b)->required();
  sep_cmd->add_option("--dmax", sep_args.d_max, "max torus dimension");
  sep_cmd->add_option("--den", sep_args.den, "denominator budget");
  sep_cmd->add_option("--random-budget", sep_args.random_budget, "seeded refinements");
  sep_cmd->add_option("--trunc", sep_args.trunc, "prefix length for truncated sets");
  sep_cmd->add_option("--seed", sep_args.seed);
  sep_cmd->add_option("--out", sep_args.out);

  I0Args i0_args;
  auto* i0_cmd = app.add_subcommand("i0", "constructive I0 partition and verification");
  i0_cmd->add_option("--r", i0_args.r, "lacunary base descriptor");
  i0_cmd->add_option("--t", i0_args.t, "shift descriptor t_n");
  i0_cmd->add_option("--count", i0_args.count, "number of pairs");
  i0_cmd->add_option("--alpha", i0_args.alpha, "rotation (default: search a witness)");
  i0_cmd->add_option("--eps", i0_args.eps, "witness eps (with --alpha)");
  i0_cmd->add_option("--dmax", i0_args.d_max);
  i0_cmd->add_option("--den", i0_args.den);
  i0_cmd->add_option("--out", i0_args.out);

  RegionArgs region_args;
  auto* region_cmd = app.add_subcommand("regions", "polynomial arrangement region census");
  region_cmd->add_option("--polys", region_args.polys, "semicolon-separated polynomials")
      ->required();
  region_cmd->add_option("--box", region_args.box, "per-axis lo,hi;lo,hi");
  region_cmd->add_option("--interval", region_args.interval, "interval for exact1d");
  region_cmd->add_option("--degree-bound", region_args.degree_bound);
  region_cmd->add_option("--res", region_args.resolution);
  region_cmd->add_option("--delta", region_args.delta, "boundary guard (rational)");
  region_cmd->add_option("--method", region_args.method)
      ->check(CLI::IsMember({"grid", "exact1d"}));
  region_cmd->add_option("--threads", region_args.threads);
  region_cmd->add_option("--out", region_args.out);

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "lacunary / sublacunary diagnostics");
  classify_cmd->add_option("--set", classify_args.set);
  classify_cmd->add_option("--N", classify_args.n, "prefix length");
  classify_cmd->add_option("--threshold", classify_args.threshold);
  classify_cmd->add_option("--out", classify_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (orbit_cmd->parsed()) return run_orbit(orbit_args);
    if (census_cmd->parsed()) return run_nice_census(census_args);
    if (sep_cmd->parsed()) return run_separate(sep_args);
    if (i0_cmd->parsed()) return run_i0(i0_args);
    if (region_cmd->parsed()) return run_regions(region_args);
    if (classify_cmd->parsed()) return run_classify(classify_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
