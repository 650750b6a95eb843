#pragma once

// JSON views of library objects (nlohmann::json, vendored as json.hpp).

#include <complex>
#include <sstream>
#include <string>

#include "json.hpp"

#include "orbitfn/exp_ring.hpp"
#include "orbitfn/orbit_functions.hpp"
#include "orbitfn/root_system.hpp"
#include "orbitfn/verify.hpp"
#include "orbitfn/weyl_group.hpp"

namespace orbitfn {

using Json = nlohmann::json;

inline Json to_json(const Weight& w) { return Json(w.coords()); }
inline Json to_json(const Point& x) { return Json(x.coords()); }
inline Json to_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline std::string rational_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Json to_json(const Root& r) {
  return Json{{"weight", to_json(r.weight)},
              {"simple", r.simple},
              {"coroot", r.coroot},
              {"length_sq", rational_string(r.length_sq)},
              {"length", to_string(r.length)}};
}

inline Json to_json(const RootSystem& rs) {
  Json j{{"algebra", rs.algebra().to_string()},
         {"rank", rs.rank()},
         {"cartan", to_json(rs.cartan())},
         {"weyl_order", rs.weyl_order()},
         {"root_count", 2 * rs.positive_roots().size()},
         {"highest_root", to_json(rs.highest_root())},
         {"marks", rs.marks()},
         {"rho", to_json(rs.rho())},
         {"two_lengths", rs.has_two_lengths()}};
  Json roots = Json::array();
  for (const auto& r : rs.positive_roots()) roots.push_back(to_json(r));
  j["positive_roots"] = roots;
  if (rs.has_two_lengths()) {
    j["rho_long"] = to_json(rs.rho_long());
    j["rho_short"] = to_json(rs.rho_short());
    j["long_subsystem"] = rs.subsystem(RootLength::Long).type;
    j["short_subsystem"] = rs.subsystem(RootLength::Short).type;
  }
  return j;
}

inline Json to_json(const WeylElement& w) {
  return Json{{"word", w.word},
              {"weight_action", to_json(w.weight_action)},
              {"signs", {{"id", w.signs.id}, {"sigma", w.signs.sigma}, {"long", w.signs.long_sign}, {"short", w.signs.short_sign}}}};
}

inline Json to_json(const FoldResult& f) {
  return Json{{"folded_point", to_json(f.folded_point)},
              {"signs", {{"id", f.signs.id}, {"sigma", f.signs.sigma}, {"long", f.signs.long_sign}, {"short", f.signs.short_sign}}},
              {"shift", f.shift},
              {"linear_part", to_json(f.point_action)},
              {"steps", f.steps}};
}

/// {meta, rows}; each row is [x_1, ..., x_n, re, im].
inline Json grid_to_json(const GridTable& t, Json meta) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < t.points.size(); ++r) {
    Json row(t.points[r].coords());
    row.push_back(t.values[r].real());
    row.push_back(t.values[r].imag());
    rows.push_back(row);
  }
  Json columns = Json::array();
  for (std::size_t i = 0; i < t.rank; ++i) columns.push_back("x_" + std::to_string(i + 1));
  columns.push_back("re");
  columns.push_back("im");
  meta["columns"] = columns;
  return Json{{"meta", meta}, {"rows", rows}};
}

inline Json to_json(const ExpPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [k, c] : p.terms()) {
    Json e = Json::array();
    for (auto v : k.exponent) {
      if (v % 2 == 0)
        e.push_back(v / 2);
      else
        e.push_back(std::to_string(v) + "/2");
    }
    terms.push_back(Json{{"coefficient", c.str()}, {"exponent", e}});
  }
  return terms;
}

inline Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name},
                          {"status", to_string(c.status)},
                          {"count", c.count},
                          {"detail", c.detail},
                          {"seconds", c.seconds}});
  return Json{{"algebra", r.algebra},
              {"passed", r.passed()},
              {"counts",
               {{"pass", r.count(CheckStatus::Pass)},
                {"fail", r.count(CheckStatus::Fail)},
                {"skipped", r.count(CheckStatus::Skipped)}}},
              {"seconds", r.seconds},
              {"checks", checks}};
}

inline Json to_json(const OrthogonalityReport& r) {
  return Json{{"family", to_string(r.family)},
              {"lambda", to_json(r.lambda)},
              {"mu", to_json(r.mu)},
              {"numeric", to_json(r.numeric_value)},
              {"standard_error", r.standard_error},
              {"exact", r.exact_value.str()},
              {"formula", r.formula_value.str()},
              {"relative_error", r.relative_error},
              {"within_tolerance", r.within_tolerance}};
}

}  // namespace orbitfn
