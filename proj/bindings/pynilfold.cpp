// pybind11 bindings for the main operations. Rationals cross the boundary
// as "p/q" strings so python callers keep exactness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilfold/arrangement.hpp"
#include "nilfold/bohr.hpp"
#include "nilfold/group.hpp"
#include "nilfold/nice_census.hpp"
#include "nilfold/orbit.hpp"

namespace py = pybind11;
using namespace nilfold;

namespace {

ValidatedSpec spec_by_name(const std::string& name) {
  if (auto reg = registry_spec(name)) return std::move(*reg);
  throw py::value_error("unknown spec '" + name + "'");
}

std::vector<Rational> to_rationals(const std::vector<std::string>& strs) {
  std::vector<Rational> out;
  out.reserve(strs.size());
  for (const auto& s : strs) out.push_back(Rational::parse(s));
  return out;
}

std::vector<std::string> to_strings(const std::vector<Rational>& vals) {
  std::vector<std::string> out;
  out.reserve(vals.size());
  for (const auto& v : vals) out.push_back(v.str());
  return out;
}

GroupElement element(const ValidatedSpec& spec, const std::vector<std::string>& coords) {
  return make_element(spec, to_rationals(coords));
}

}  // namespace

PYBIND11_MODULE(nilfold, m) {
  m.doc() = "exact-arithmetic nilmanifold orbits and interpolation-set experiments";

  m.def("registry", [] {
    return std::vector<std::string>{"abelian<d>", "heisenberg", "filiform4"};
  });

  m.def(
      "multiply",
      [](const std::string& spec, const std::vector<std::string>& a,
         const std::vector<std::string>& b) {
        ValidatedSpec s = spec_by_name(spec);
        return to_strings(multiply(s, element(s, a), element(s, b)).coords);
      },
      py::arg("spec"), py::arg("a"), py::arg("b"));

  m.def(
      "inverse",
      [](const std::string& spec, const std::vector<std::string>& a) {
        ValidatedSpec s = spec_by_name(spec);
        return to_strings(inverse(s, element(s, a)).coords);
      },
      py::arg("spec"), py::arg("a"));

  m.def(
      "power",
      [](const std::string& spec, const std::vector<std::string>& a, long n) {
        ValidatedSpec s = spec_by_name(spec);
        return to_strings(power(s, element(s, a), Integer(n)).coords);
      },
      py::arg("spec"), py::arg("a"), py::arg("n"));

  m.def(
      "power_closed",
      [](const std::string& spec, const std::vector<std::string>& a, unsigned long n) {
        ValidatedSpec s = spec_by_name(spec);
        return to_strings(power_closed(s, element(s, a), n).coords);
      },
      py::arg("spec"), py::arg("a"), py::arg("n"));

  m.def(
      "reduce",
      [](const std::string& spec, const std::vector<std::string>& a) {
        ValidatedSpec s = spec_by_name(spec);
        return to_strings(reduce(s, element(s, a)).coords);
      },
      py::arg("spec"), py::arg("a"));

  m.def(
      "torus_distance",
      [](const std::vector<std::string>& p, const std::vector<std::string>& q) {
        return torus_distance(ManifoldPoint{to_rationals(p)}, ManifoldPoint{to_rationals(q)})
            .str();
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "orbit",
      [](const std::string& spec, const std::vector<std::string>& g, const std::string& set,
         std::size_t count) {
        ValidatedSpec s = spec_by_name(spec);
        SetDescriptor d = SetDescriptor::parse(set);
        OrbitTable t = orbit(s, element(s, g), d.prefix(d.known_size().value_or(count)));
        py::list rows;
        for (std::size_t i = 0; i < t.exponents.size(); ++i) {
          py::dict row;
          row["exponent"] = t.exponents[i].get_str();
          row["point"] = to_strings(t.points[i].coords);
          rows.append(row);
        }
        return rows;
      },
      py::arg("spec"), py::arg("g"), py::arg("set"), py::arg("count") = 16);

  m.def(
      "coeff_bound",
      [](const std::string& spec, unsigned long n) {
        return coeff_bound(spec_by_name(spec), n).str();
      },
      py::arg("spec"), py::arg("n"));

  m.def("region_bound", [](unsigned b, unsigned l, unsigned m) {
    return region_bound(b, l, m).get_str();
  });

  m.def(
      "lacunary_ratio",
      [](const std::string& set, std::size_t n) {
        return lacunary_ratio(SetDescriptor::parse(set).prefix(n)).str();
      },
      py::arg("set"), py::arg("n"));

  m.def(
      "nice_census",
      [](const std::string& spec, const std::string& set, std::size_t n,
         const std::string& m_box, const std::string& eps, unsigned resolution,
         unsigned threads) {
        NiceCensus c = nice_census(spec_by_name(spec), SetDescriptor::parse(set), n,
                                   Rational::parse(m_box), Rational::parse(eps), resolution,
                                   threads);
        py::dict out;
        out["N"] = c.n;
        out["realized_nice_sets"] = c.realized_nice_sets.get_str();
        out["realized_partitions"] = c.realized_partitions.get_str();
        out["component_cap"] = c.component_cap.get_str();
        out["spec"] = c.spec_id;
        return out;
      },
      py::arg("spec"), py::arg("set"), py::arg("n"), py::arg("m_box") = "1",
      py::arg("eps") = "1/4", py::arg("resolution") = 11, py::arg("threads") = 1);

  m.def(
      "rotation_gap",
      [](const std::vector<std::string>& alpha, const std::string& a, const std::string& b,
         std::size_t truncation) {
        SeparationCertificate cert =
            rotation_gap(make_rotation(to_rationals(alpha)), SetDescriptor::parse(a),
                         SetDescriptor::parse(b), truncation);
        py::dict out;
        out["gap"] = cert.infinite_gap ? std::string("inf") : cert.gap.str();
        out["exact"] = cert.exact;
        out["truncation"] = cert.truncation;
        return out;
      },
      py::arg("alpha"), py::arg("a"), py::arg("b"), py::arg("truncation") = 20);

  m.def(
      "find_separating_rotation",
      [](const std::string& a, const std::string& b, unsigned d_max, unsigned long den,
         std::size_t truncation) {
        auto res = find_separating_rotation(SetDescriptor::parse(a), SetDescriptor::parse(b),
                                            d_max, den, 0, truncation);
        py::dict out;
        out["found"] = res.found;
        out["alpha"] = to_strings(res.best.rotation.alpha);
        out["gap"] = res.best.gap.str();
        out["exact"] = res.best.exact;
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("d_max") = 2, py::arg("den") = 64,
      py::arg("truncation") = 20);

  m.def(
      "count_regions_grid",
      [](const std::vector<std::string>& polys,
         const std::vector<std::pair<std::string, std::string>>& box, unsigned resolution,
         const std::string& delta, unsigned degree_bound, unsigned threads) {
        std::vector<std::string> names = {"x", "y", "z", "w"};
        names.resize(box.size());
        std::vector<Polynomial> ps;
        // python passes the group-file term syntax; keep one parser
        for (const auto& t : polys) ps.push_back(Polynomial::parse(t, names));
        std::vector<std::pair<Rational, Rational>> rbox;
        for (const auto& [lo, hi] : box)
          rbox.emplace_back(Rational::parse(lo), Rational::parse(hi));
        Arrangement arr = make_arrangement(ps, degree_bound, rbox);
        RegionCensus c = count_regions_stable(arr, resolution, Rational::parse(delta), threads);
        py::dict out;
        out["count"] = c.region_count.get_str();
        out["stable"] = c.stable;
        out["resolution"] = c.resolution;
        return out;
      },
      py::arg("polys"), py::arg("box"), py::arg("resolution") = 301,
      py::arg("delta") = "1/1000", py::arg("degree_bound") = 4, py::arg("threads") = 1);
}
