#include "qpicard/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qpicard {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

double number(const Json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + ": expected a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + ": expected an integer");
  return j.get<int>();
}

const Json& array_of(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || (n != 0 && j.size() != n)) {
    malformed(std::string(what) + ": expected an array" +
              (n ? " of " + std::to_string(n) + " entries" : std::string()));
  }
  return j;
}

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    malformed(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

std::vector<Quaternion> quaternions_from_json(const Json& j, const char* what) {
  std::vector<Quaternion> out;
  for (const Json& q : array_of(j, 0, what)) out.push_back(quaternion_from_json(q));
  return out;
}

Json quaternions_to_json(const std::vector<Quaternion>& qs) {
  Json out = Json::array();
  for (const auto& q : qs) out.push_back(to_json(q));
  return out;
}

// Non-finite values become null, which standard JSON can carry.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }
Json to_json(const ImaginaryUnit& h) { return Json::array({h.x(), h.y(), h.z()}); }
Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CQuaternion& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < 4; ++i) out.push_back(to_json(v[i]));
  return out;
}

Json to_json(const SliceFunction& f) {
  Json out;
  if (f.is_polynomial()) {
    out = {{"kind", "poly"}, {"coeffs", quaternions_to_json(f.polynomial_part())}};
  } else {
    bool named = false;
    for (auto name : {NamedFunction::SinJCosK, NamedFunction::Exp, NamedFunction::Sin,
                      NamedFunction::Cos}) {
      if (f.same_coefficients(SliceFunction::named(name))) {
        out = {{"kind", "named"}, {"name", std::string(name_of(name))}};
        named = true;
        break;
      }
    }
    if (!named) {
      Json terms = Json::array();
      for (const auto& t : f.series_terms()) {
        terms.push_back({{"series", std::string(name_of(t.kind))}, {"weight", to_json(t.weight)}});
      }
      out = {{"kind", "series"},
             {"poly", quaternions_to_json(f.polynomial_part())},
             {"terms", terms}};
    }
  }
  if (!f.description().empty()) out["description"] = f.description();
  return out;
}

Json to_json(const Fiber& fiber) {
  switch (fiber.kind) {
    case Fiber::Kind::Point:
      return {{"type", "point"}, {"H", to_json(fiber.h)}};
    case Fiber::Kind::Sphere:
      return {{"type", "sphere"}};
    case Fiber::Kind::Empty:
      break;
  }
  return {{"type", "empty"}};
}

Json to_json(const Root& root) {
  return {{"x", root.x}, {"y", root.y}, {"winding", root.winding}, {"fiber", to_json(root.fiber)}};
}

Json to_json(const RootSearchTrace& trace) {
  return {{"boundary_winding", trace.boundary_winding},
          {"perturbations", trace.perturbations},
          {"subdivisions", trace.subdivisions},
          {"additivity_checks", trace.additivity_checks},
          {"additivity_violations", trace.additivity_violations},
          {"evaluations", trace.evaluations}};
}

Json to_json(const SearchRect& rect) {
  return Json::array({rect.x_min, rect.x_max, rect.y_min, rect.y_max});
}

Json to_json(const Automorphism& aut) { return {{"rotor", to_json(aut.rotor())}}; }

Json to_json(const AffinePlane& plane) {
  return {{"p0", to_json(plane.p0)}, {"u", to_json(plane.u)}, {"v", to_json(plane.v)}};
}

Json to_json(const AvoidanceReport& report) {
  return {{"g", to_json(report.g)},
          {"base", to_json(trig_example())},
          {"avoided", quaternions_to_json(report.avoided)},
          {"automorphism", to_json(report.aut)},
          {"lambda", to_json(report.lambda)},
          {"p", to_json(report.p)},
          {"transformed_targets", quaternions_to_json(report.transformed_targets)}};
}

Json to_json(const FiveValueProblem& prob) {
  auto matrix = [](const Eigen::Matrix4d& m) {
    Json rows = Json::array();
    for (int i = 0; i < 4; ++i) {
      rows.push_back(Json::array({m(i, 0), m(i, 1), m(i, 2), m(i, 3)}));
    }
    return rows;
  };
  Json targets = Json::array();
  for (const auto& c : prob.targets()) targets.push_back(to_json(c));
  return {{"targets", targets},
          {"general_position", true},
          {"B_inverse", matrix(prob.basis_inverse())},
          {"B", matrix(prob.b())},
          {"M", matrix(prob.gram())},
          {"min_eigenvalue", prob.min_eigenvalue()}};
}

std::string_view verdict_name(LaurentCertificate::Verdict v) {
  switch (v) {
    case LaurentCertificate::Verdict::NonVanishing:
      return "NonVanishing";
    case LaurentCertificate::Verdict::ConstantCurve:
      return "ConstantCurve";
    case LaurentCertificate::Verdict::AllZero:
      break;
  }
  return "AllZero";
}

Json to_json(const LaurentCertificate& cert) {
  Json verdict = {{"type", std::string(verdict_name(cert.verdict))}};
  if (cert.verdict != LaurentCertificate::Verdict::AllZero) {
    verdict["degree"] = cert.degree;
    verdict["coefficient"] = cert.value;
  }
  Json coefficients = Json::array();
  for (const auto& [degree, value] : cert.coefficients) {
    coefficients.push_back(Json::array({degree, value}));
  }
  return {{"m", cert.m},
          {"alpha", cert.alpha},
          {"verdict", verdict},
          {"exact", cert.exact},
          {"coefficients", coefficients}};
}

Json to_json(const FiveValueHarnessReport& report) {
  Json components = Json::array();
  for (const auto& c : report.components) {
    Json points = Json::array();
    for (auto z : c.vanishing_points) points.push_back(to_json(z));
    components.push_back({{"min_abs", c.min_abs},
                          {"vanishing_count", c.vanishing_count},
                          {"identically_zero", c.identically_zero},
                          {"vanishing_points", points}});
  }
  return {{"points", report.points},
          {"max_scaled_residual", report.max_scaled_residual},
          {"stays_in_variety", report.stays_in_variety},
          {"components", components}};
}

Json to_json(const DensityReport& report) {
  return {{"grid_points", report.grid_points},
          {"excluded", report.excluded},
          {"considered", report.considered},
          {"attained", report.attained},
          {"fraction", report.fraction},
          {"max_gap", finite_or_null(report.max_gap)},
          {"unattained", quaternions_to_json(report.unattained)}};
}

Json to_json(const Error& error) {
  return {{"error", {{"code", std::string(code_name(error.code()))}, {"message", error.what()}}}};
}

Quaternion quaternion_from_json(const Json& j) {
  const Json& a = array_of(j, 4, "quaternion");
  return {number(a[0], "quaternion"), number(a[1], "quaternion"), number(a[2], "quaternion"),
          number(a[3], "quaternion")};
}

ImaginaryUnit unit_from_json(const Json& j) {
  const Json& a = array_of(j, 3, "imaginary unit");
  const Quaternion q(0.0, number(a[0], "imaginary unit"), number(a[1], "imaginary unit"),
                     number(a[2], "imaginary unit"));
  try {
    return ImaginaryUnit::checked(q, 1e-9);
  } catch (const Error& e) {
    malformed(std::string("imaginary unit: ") + e.what());
  }
}

Complex complex_from_json(const Json& j) {
  const Json& a = array_of(j, 2, "complex");
  return {number(a[0], "complex"), number(a[1], "complex")};
}

CQuaternion cquaternion_from_json(const Json& j) {
  const Json& a = array_of(j, 4, "complexified quaternion");
  return CQuaternion(std::array<Complex, 4>{complex_from_json(a[0]), complex_from_json(a[1]),
                                            complex_from_json(a[2]), complex_from_json(a[3])});
}

SliceFunction slice_function_from_json(const Json& j) {
  if (j.is_object() && j.contains("g") && !j.contains("kind")) return slice_function_from_json(j["g"]);
  const Json& kind = field(j, "kind", "slice function");
  if (!kind.is_string()) malformed("slice function: \"kind\" must be a string");
  std::string description;
  if (j.contains("description")) {
    if (!j["description"].is_string()) malformed("slice function: description must be a string");
    description = j["description"].get<std::string>();
  }
  const auto k = kind.get<std::string>();
  if (k == "poly") {
    return SliceFunction::polynomial(
        quaternions_from_json(field(j, "coeffs", "slice function"), "coeffs"), description);
  }
  if (k == "named") {
    const Json& name = field(j, "name", "slice function");
    if (!name.is_string()) malformed("slice function: \"name\" must be a string");
    const auto parsed = parse_named_function(name.get<std::string>());
    if (!parsed) malformed("slice function: unknown name \"" + name.get<std::string>() + "\"");
    return SliceFunction::named(*parsed);
  }
  if (k == "series") {
    std::vector<Quaternion> poly;
    if (j.contains("poly")) poly = quaternions_from_json(j["poly"], "poly");
    std::vector<SeriesTerm> terms;
    for (const Json& t : array_of(field(j, "terms", "slice function"), 0, "terms")) {
      const Json& series = field(t, "series", "series term");
      if (!series.is_string()) malformed("series term: \"series\" must be a string");
      const auto parsed = parse_series_kind(series.get<std::string>());
      if (!parsed) malformed("series term: unknown series \"" + series.get<std::string>() + "\"");
      terms.push_back({*parsed, quaternion_from_json(field(t, "weight", "series term"))});
    }
    return SliceFunction::series(std::move(poly), std::move(terms), description);
  }
  malformed("slice function: unknown kind \"" + k + "\"");
}

Root root_from_json(const Json& j) {
  Root r;
  r.x = number(field(j, "x", "root"), "root x");
  r.y = number(field(j, "y", "root"), "root y");
  r.winding = integer(field(j, "winding", "root"), "root winding");
  const Json& fiber = field(j, "fiber", "root");
  const Json& type = field(fiber, "type", "fiber");
  if (!type.is_string()) malformed("fiber: \"type\" must be a string");
  const auto t = type.get<std::string>();
  if (t == "point") {
    r.fiber = Fiber::point(unit_from_json(field(fiber, "H", "fiber")));
  } else if (t == "sphere") {
    r.fiber = Fiber::sphere();
  } else if (t == "empty") {
    r.fiber = Fiber::empty();
  } else {
    malformed("fiber: unknown type \"" + t + "\"");
  }
  return r;
}

SearchRect rect_from_json(const Json& j) {
  const Json& a = array_of(j, 4, "search rectangle");
  SearchRect rect{number(a[0], "rect"), number(a[1], "rect"), number(a[2], "rect"),
                  number(a[3], "rect")};
  try {
    rect.validate();
  } catch (const Error& e) {
    malformed(std::string("search rectangle: ") + e.what());
  }
  return rect;
}

Automorphism automorphism_from_json(const Json& j) {
  const Quaternion rotor = quaternion_from_json(field(j, "rotor", "automorphism"));
  if (rotor.norm2() == 0.0) malformed("automorphism: rotor must be nonzero");
  return Automorphism(rotor);
}

AffinePlane plane_from_json(const Json& j) {
  return {quaternion_from_json(field(j, "p0", "plane")), quaternion_from_json(field(j, "u", "plane")),
          quaternion_from_json(field(j, "v", "plane"))};
}

AvoidanceReport avoidance_report_from_json(const Json& j) {
  AvoidanceReport report;
  report.aut = automorphism_from_json(field(j, "automorphism", "avoidance report"));
  report.lambda = quaternion_from_json(field(j, "lambda", "avoidance report"));
  report.p = quaternion_from_json(field(j, "p", "avoidance report"));
  if (report.lambda.norm2() == 0.0) malformed("avoidance report: lambda must be nonzero");
  if (j.contains("base") && !is_trig_example(slice_function_from_json(j["base"]))) {
    malformed("avoidance report: base function must be sinJcosK");
  }
  report.g = transform(trig_example(), report.aut, report.lambda, report.p);
  if (j.contains("g") && !slice_function_from_json(j["g"]).same_coefficients(report.g)) {
    // Rebuilding g from a rounded rotor can differ in the last bits; keep
    // the stored coefficients when they are that close.
    const SliceFunction stored = slice_function_from_json(j["g"]);
    const std::size_t n = 4;
    for (std::size_t k = 0; k < n; ++k) {
      if ((stored.coefficient(k) - report.g.coefficient(k)).norm() >
          1e-9 * (1.0 + report.g.coefficient(k).norm())) {
        malformed("avoidance report: g does not match the stored transform");
      }
    }
    report.g = stored;
  }
  if (j.contains("avoided")) report.avoided = quaternions_from_json(j["avoided"], "avoided");
  for (const auto& c : report.avoided) {
    report.transformed_targets.push_back(pull_back_target(report, c));
  }
  return report;
}

Targets5 targets_from_json(const Json& j) {
  const Json& list = j.is_object() ? field(j, "targets", "targets") : j;
  const Json& a = array_of(list, 5, "targets");
  Targets5 out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = quaternion_from_json(a[i]);
  return out;
}

}  // namespace qpicard
