#include "qpicard/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "qpicard/json_io.hpp"

namespace qpicard::cli {

namespace {

enum class Format { Json, Csv };

struct Common {
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 0;
};

// A produced artifact: JSON, and CSV when the command has a tabular form.
struct Artifact {
  Json json;
  std::function<void(std::ostream&)> csv;
};

Json load_json(const std::string& text, const char* what) {
  std::string body = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw Error(ErrorCode::MalformedInput, std::string(what) + ": cannot read " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, std::string(what) + ": " + e.what());
  }
}

SliceFunction function_or_trig(const std::string& text) {
  return text.empty() ? trig_example() : slice_function_from_json(load_json(text, "--function"));
}

void write_quaternion_csv(std::ostream& os, const std::vector<Quaternion>& qs) {
  os << "w,x,y,z\n";
  for (const auto& q : qs) os << q.w << ',' << q.x << ',' << q.y << ',' << q.z << '\n';
}

Targets5 default_targets() {
  return {Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k(), Quaternion()};
}

Quaternion preimage_by_search(const SliceFunction& f, const Quaternion& c, const SearchRect& rect) {
  for (const Root& r : find_roots(f, c, rect)) {
    if (r.fiber.kind == Fiber::Kind::Point) return slice_point(r.x, r.y, r.fiber.h);
    if (r.fiber.kind == Fiber::Kind::Sphere) return slice_point(r.x, r.y, ImaginaryUnit::i());
  }
  throw Error(ErrorCode::Unreachable, "no preimage found in the search rectangle");
}

std::array<double, 5> random_alpha(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);
  std::array<double, 5> alpha;
  for (double& a : alpha) a = sign(rng) ? mag(rng) : -mag(rng);
  return alpha;
}

template <std::size_t N, class T>
std::array<T, N> fixed_array(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != N) {
    throw Error(ErrorCode::MalformedInput,
                std::string(what) + ": expected an array of " + std::to_string(N) + " entries");
  }
  std::array<T, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    if constexpr (std::is_integral_v<T>) {
      if (!j[i].is_number_integer()) {
        throw Error(ErrorCode::MalformedInput, std::string(what) + ": expected integers");
      }
    } else if (!j[i].is_number()) {
      throw Error(ErrorCode::MalformedInput, std::string(what) + ": expected numbers");
    }
    out[i] = j[i].get<T>();
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entire slice regular functions: evaluation, value attainment and avoidance"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", common.output, "Write the artifact to this file");
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", common.seed, "Seed for sampled quantities");
  };

  std::string function, q_text, target, rect_text = "[-10,10,0,10]", avoidance;
  std::string points, p0, u, v, targets_text, m_text, alpha_text, certificate, exclude;
  std::size_t grid = 101;
  double radius = 3.0, step = 0.5, epsilon = 1e-3;
  bool floating = false;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate f at a quaternion");
  eval_cmd->add_option("--function", function, "SliceFunction JSON or @file (default sinJcosK)");
  eval_cmd->add_option("--q", q_text, "Point [w,x,y,z]")->required();

  auto* preimage_cmd = app.add_subcommand("preimage", "Solve f(q) = c");
  preimage_cmd->add_option("--target", target, "Value c as [w,x,y,z]")->required();
  preimage_cmd->add_option("--function", function, "SliceFunction JSON or @file (default sinJcosK)");
  preimage_cmd->add_option("--avoidance", avoidance, "AvoidanceReport JSON or @file");
  preimage_cmd->add_option("--rect", rect_text, "Root search rectangle [x0,x1,y0,y1]");

  auto* zeros_cmd = app.add_subcommand("zeros", "Zeros of Q_c in a rectangle");
  zeros_cmd->add_option("--function", function, "SliceFunction JSON or @file (default sinJcosK)");
  zeros_cmd->add_option("--target", target, "Value c as [w,x,y,z]")->required();
  zeros_cmd->add_option("--rect", rect_text, "Search rectangle [x0,x1,y0,y1]");
  zeros_cmd->add_option("--grid", grid, "CSV grid points per side")->check(CLI::Range(2, 4000));

  auto* avoid3_cmd = app.add_subcommand("avoid3", "Entire function avoiding three values");
  avoid3_cmd->add_option("--points", points, "[[w,x,y,z] x 3]")->required();

  auto* plane_cmd = app.add_subcommand("avoid-plane", "Entire function avoiding p0 + span{u, v}");
  plane_cmd->add_option("--p0", p0, "Base point [w,x,y,z]")->required();
  plane_cmd->add_option("--u", u, "First direction [w,x,y,z]")->required();
  plane_cmd->add_option("--v", v, "Second direction [w,x,y,z]")->required();

  auto* check5_cmd = app.add_subcommand("check5", "Five-target problem and optional trace of f");
  check5_cmd->add_option("--targets", targets_text, "{\"targets\":[...]} or [q x 5]")->required();
  check5_cmd->add_option("--function", function, "SliceFunction JSON or @file to trace");
  check5_cmd->add_option("--rect", rect_text, "Trace rectangle [x0,x1,y0,y1]");
  check5_cmd->add_option("--grid", grid, "Trace grid points per side")->check(CLI::Range(2, 4000));

  auto* mono_cmd = app.add_subcommand("monomial-check", "Laurent certificate for a monomial curve");
  mono_cmd->add_option("--targets", targets_text, "Targets (default 1, I, J, K, 0)");
  mono_cmd->add_option("--m", m_text, "Exponents [m1,...,m5]");
  mono_cmd->add_option("--alpha", alpha_text, "Coefficients [a1,...,a5] (default: random from seed)");
  mono_cmd->add_option("--certificate", certificate, "Re-check m and alpha of a certificate");
  mono_cmd->add_flag("--floating", floating, "Floating-point instead of exact rational arithmetic");

  auto* density_cmd = app.add_subcommand("density-scan", "Attainment over a grid in a ball");
  density_cmd->add_option("--function", function, "SliceFunction JSON or @file (default sinJcosK)");
  density_cmd->add_option("--radius", radius, "Ball radius");
  density_cmd->add_option("--step", step, "Grid step");
  density_cmd->add_option("--exclude", exclude, "Plane {\"p0\",\"u\",\"v\"}, or CI for the slice C_I");
  density_cmd->add_option("--epsilon", epsilon, "Excluded slab half-width");
  density_cmd->add_option("--avoidance", avoidance, "AvoidanceReport JSON or @file");
  density_cmd->add_option("--rect", rect_text, "Root search rectangle [x0,x1,y0,y1]");

  for (auto* sub : app.get_subcommands({})) add_common(sub);

  auto fail = [&](const Error& e) {
    out << to_json(e).dump() << '\n';
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::MalformedInput ? 2 : 1;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(Error(ErrorCode::MalformedInput, e.what()));
  }

  const Format format = common.format == "csv" ? Format::Csv : Format::Json;
  try {
    Artifact artifact;
    if (eval_cmd->parsed()) {
      const SliceFunction f = function_or_trig(function);
      const Quaternion q = quaternion_from_json(load_json(q_text, "--q"));
      const Quaternion value = eval(f, q);
      artifact.json = {{"q", to_json(q)}, {"value", to_json(value)}};
      artifact.csv = [value](std::ostream& os) { write_quaternion_csv(os, {value}); };
    } else if (preimage_cmd->parsed()) {
      const Quaternion c = quaternion_from_json(load_json(target, "--target"));
      Quaternion q;
      double residual = 0.0;
      if (!avoidance.empty()) {
        const AvoidanceReport report = avoidance_report_from_json(load_json(avoidance, "--avoidance"));
        q = transformed_preimage(report, c);
        residual = (eval(report.g, q) - c).norm();
      } else {
        const SliceFunction f = function_or_trig(function);
        q = is_trig_example(f) ? trig_preimage(c)
                               : preimage_by_search(f, c, rect_from_json(load_json(rect_text, "--rect")));
        residual = (eval(f, q) - c).norm();
      }
      artifact.json = {{"q", to_json(q)}, {"residual", residual}};
      artifact.csv = [q](std::ostream& os) { write_quaternion_csv(os, {q}); };
    } else if (zeros_cmd->parsed()) {
      const SliceFunction f = function_or_trig(function);
      const Quaternion c = quaternion_from_json(load_json(target, "--target"));
      const SearchRect rect = rect_from_json(load_json(rect_text, "--rect"));
      if (format == Format::Csv) {
        // Only the grid is needed; skip the root search.
        artifact.csv = [f, c, rect, grid](std::ostream& os) {
          os << "x,y,abs_q\n" << std::setprecision(17);
          for (const QcSample& s : sample_qc_grid(f, c, rect, grid, grid)) {
            os << s.x << ',' << s.y << ',' << s.abs_q << '\n';
          }
        };
      } else {
        const RootSearchResult result = search_roots(f, c, rect);
        Json roots = Json::array();
        for (const Root& r : result.roots) roots.push_back(to_json(r));
        artifact.json = {{"target", to_json(c)},
                         {"rect", to_json(rect)},
                         {"searched", to_json(result.searched)},
                         {"roots", roots},
                         {"trace", to_json(result.trace)}};
      }
    } else if (avoid3_cmd->parsed()) {
      const Json list = load_json(points, "--points");
      if (!list.is_array() || list.size() != 3) {
        throw Error(ErrorCode::MalformedInput, "--points: expected three quaternions");
      }
      artifact.json = to_json(avoid_three(quaternion_from_json(list[0]), quaternion_from_json(list[1]),
                                          quaternion_from_json(list[2])));
    } else if (plane_cmd->parsed()) {
      artifact.json = to_json(plane_avoider(quaternion_from_json(load_json(p0, "--p0")),
                                            quaternion_from_json(load_json(u, "--u")),
                                            quaternion_from_json(load_json(v, "--v"))));
    } else if (check5_cmd->parsed()) {
      const FiveValueProblem prob = build_problem(targets_from_json(load_json(targets_text, "--targets")));
      artifact.json = to_json(prob);
      if (!function.empty()) {
        const SliceFunction f = slice_function_from_json(load_json(function, "--function"));
        const SearchRect rect = rect_from_json(load_json(rect_text, "--rect"));
        artifact.json["harness"] = to_json(five_value_harness(prob, f, rect, grid));
      }
    } else if (mono_cmd->parsed()) {
      std::array<int, 5> m{};
      std::array<double, 5> alpha{};
      if (!certificate.empty()) {
        const Json cert = load_json(certificate, "--certificate");
        if (!cert.is_object() || !cert.contains("m") || !cert.contains("alpha")) {
          throw Error(ErrorCode::MalformedInput, "--certificate: needs \"m\" and \"alpha\"");
        }
        m = fixed_array<5, int>(cert["m"], "m");
        alpha = fixed_array<5, double>(cert["alpha"], "alpha");
      } else {
        if (m_text.empty()) throw Error(ErrorCode::MalformedInput, "--m or --certificate is required");
        m = fixed_array<5, int>(load_json(m_text, "--m"), "--m");
        alpha = alpha_text.empty() ? random_alpha(common.seed)
                                   : fixed_array<5, double>(load_json(alpha_text, "--alpha"), "--alpha");
      }
      const Targets5 targets =
          targets_text.empty() ? default_targets() : targets_from_json(load_json(targets_text, "--targets"));
      const FiveValueProblem prob = build_problem(targets);
      const LaurentCertificate cert =
          floating ? monomial_curve_check(prob, alpha, m) : ExactQuadric(prob).check(alpha, m);
      artifact.json = to_json(cert);
      artifact.csv = [cert](std::ostream& os) {
        os << "degree,coefficient\n" << std::setprecision(17);
        for (const auto& [degree, value] : cert.coefficients) os << degree << ',' << value << '\n';
      };
    } else if (density_cmd->parsed()) {
      DensityOptions options;
      options.radius = radius;
      options.step = step;
      options.rect = rect_from_json(load_json(rect_text, "--rect"));
      SliceFunction f = function_or_trig(function);
      if (!avoidance.empty()) {
        options.report = avoidance_report_from_json(load_json(avoidance, "--avoidance"));
        f = options.report->g;
      }
      if (exclude == "CI") {
        options.exclusion = DensityExclusion{{Quaternion(), Quaternion::one(), Quaternion::i()}, epsilon};
      } else if (!exclude.empty()) {
        options.exclusion = DensityExclusion{plane_from_json(load_json(exclude, "--exclude")), epsilon};
      }
      const DensityReport report = run_density_scan(f, options);
      artifact.json = to_json(report);
      artifact.csv = [report](std::ostream& os) { write_quaternion_csv(os, report.unattained); };
    }

    if (format == Format::Csv && !artifact.csv) {
      throw Error(ErrorCode::MalformedInput, "this subcommand has no CSV form");
    }
    std::ofstream file;
    if (!common.output.empty()) {
      file.open(common.output);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + common.output);
    }
    std::ostream& sink = common.output.empty() ? out : file;
    if (format == Format::Csv) {
      artifact.csv(sink);
    } else {
      sink << artifact.json.dump(2) << '\n';
    }
    return 0;
  } catch (const Error& e) {
    return fail(e);
  } catch (const Json::exception& e) {
    return fail(Error(ErrorCode::MalformedInput, e.what()));
  }
}

}  // namespace qpicard::cli
