#include "qpicard/zero_locus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "qpicard/errors.hpp"

namespace qpicard {

void SearchRect::validate() const {
  if (!(y_min >= 0.0)) throw Error(ErrorCode::InvalidArgument, "search rectangle needs y_min >= 0");
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw Error(ErrorCode::InvalidArgument, "search rectangle is empty");
  }
}

double SearchRect::diameter() const { return std::hypot(x_max - x_min, y_max - y_min); }

bool SearchRect::contains(Complex z, double margin) const {
  return z.real() >= x_min - margin && z.real() <= x_max + margin && z.imag() >= y_min - margin &&
         z.imag() <= y_max + margin;
}

namespace {

bool has_unit_norm_stem(const SliceFunction& f) {
  static const SliceFunction trig = SliceFunction::named(NamedFunction::SinJCosK);
  return f.same_coefficients(trig);
}

// <F - c, F - c>. For J sin z + K cos z, <F, F> = sin^2 + cos^2 = 1 is used
// directly; summing the squares loses everything once |F| ~ e^y is large.
Complex qc_of_stem(bool unit_norm, const CQuaternion& stem, const Quaternion& c) {
  const CQuaternion cc = CQuaternion::real(c);
  if (unit_norm) return 1.0 - 2.0 * bilinear(stem, cc) + c.norm2();
  return quadratic_form(stem - cc);
}

}  // namespace

Complex qc(const SliceFunction& f, const Quaternion& c, Complex z) {
  return qc_of_stem(has_unit_norm_stem(f), stem_eval(f, z), c);
}

Complex qc_derivative(const SliceFunction& f, const Quaternion& c, Complex z) {
  return 2.0 * bilinear(stem_derivative(f, z), stem_eval(f, z) - CQuaternion::real(c));
}

double qc_scale(const SliceFunction& f, const Quaternion& c, Complex z) {
  return 1.0 + stem_eval(f, z).norm2() + c.norm2();
}

bool attains(const SliceFunction& f, const Quaternion& c, double x, double y, double tol) {
  if (y < 0.0) throw Error(ErrorCode::InvalidArgument, "attains needs y >= 0");
  const Complex z(x, y);
  const CQuaternion stem = stem_eval(f, z);
  const double scale = 1.0 + stem.norm2() + c.norm2();
  return std::abs(qc_of_stem(has_unit_norm_stem(f), stem, c)) <= tol * scale;
}

Fiber fiber(const SliceFunction& f, const Quaternion& c, double x, double y, double tol) {
  if (y < 0.0) throw Error(ErrorCode::InvalidArgument, "fiber needs y >= 0");
  const double scale = 1.0 + c.norm();
  const StemValue s = stem_value(f, Complex(x, y));
  if (y == 0.0) {
    return distance(s.f1, c) <= tol * scale ? Fiber::point(ImaginaryUnit::i()) : Fiber::empty();
  }
  if (s.f2.norm() <= tol * scale) {
    return distance(s.f1, c) <= tol * scale ? Fiber::sphere() : Fiber::empty();
  }
  const Quaternion h = (c - s.f1) * s.f2.inverse();
  if (!is_imaginary_unit(h, tol)) return Fiber::empty();
  return Fiber::point(ImaginaryUnit::from_imaginary_part(h));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxPhaseStep = std::numbers::pi / 4.0;
constexpr std::size_t kMaxEvaluationsPerBoundary = 4'000'000;

struct Sample {
  Complex z;
  Complex q;
  bool vanishes;
};

class RootFinder {
 public:
  RootFinder(const SliceFunction& f, const Quaternion& c, const RootSearchOptions& options)
      : f_(f), c_(CQuaternion::real(c)), target_(c), options_(options),
        unit_norm_(has_unit_norm_stem(f)) {}

  RootSearchTrace& trace() { return trace_; }

  Sample sample(Complex z) {
    ++trace_.evaluations;
    const CQuaternion stem = stem_eval(f_, z);
    const Complex q = qc_of_stem(unit_norm_, stem, target_);
    const double scale = 1.0 + stem.norm2() + target_.norm2();
    return {z, q, !(std::abs(q) > options_.tol * scale)};
  }

  /// Winding number, or nullopt if Q_c (nearly) vanishes on the boundary.
  std::optional<int> winding(const SearchRect& r) {
    const std::array<Complex, 4> corners = {Complex(r.x_min, r.y_min), Complex(r.x_max, r.y_min),
                                            Complex(r.x_max, r.y_max), Complex(r.x_min, r.y_max)};
    budget_ = kMaxEvaluationsPerBoundary;
    min_step_ = 1e-13 * std::max(1.0, r.diameter());
    double total = 0.0;
    for (std::size_t e = 0; e < 4; ++e) {
      const Complex a = corners[e];
      const Complex b = corners[(e + 1) % 4];
      const std::size_t n = std::max<std::size_t>(1, options_.initial_edge_samples);
      Sample prev = sample(a);
      if (prev.vanishes) return std::nullopt;
      for (std::size_t i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        const Sample next = sample(a + t * (b - a));
        if (next.vanishes) return std::nullopt;
        const auto d = phase_change(prev, next);
        if (!d) return std::nullopt;
        total += *d;
        prev = next;
      }
    }
    const double turns = total / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.25) return std::nullopt;
    return static_cast<int>(rounded);
  }

  /// Refines from `start`; multiplicity-aware steps for clusters.
  /// When rounding noise keeps the step from settling, the iterate with the
  /// smallest |Q_c| is returned; callers still test it for acceptance.
  std::optional<Complex> newton(Complex start, int multiplicity) {
    Complex z = start;
    std::optional<Complex> best;
    double best_abs = std::numeric_limits<double>::infinity();
    for (int it = 0; it < options_.max_newton_iterations; ++it) {
      ++trace_.evaluations;
      const CQuaternion raw = stem_eval(f_, z);
      const Complex q = qc_of_stem(unit_norm_, raw, target_);
      const CQuaternion stem = raw - c_;
      if (q == Complex(0.0)) return z;
      if (std::abs(q) < best_abs) {
        best_abs = std::abs(q);
        best = z;
      }
      const Complex dq = 2.0 * bilinear(stem_derivative(f_, z), stem);
      if (dq == Complex(0.0) || !std::isfinite(std::abs(dq))) return std::nullopt;
      const Complex step = static_cast<double>(multiplicity) * q / dq;
      z -= step;
      if (!std::isfinite(std::abs(z))) return std::nullopt;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) {
        return z;
      }
    }
    return best;
  }

  void isolate(const SearchRect& r, int w, std::vector<Root>& out, int depth = 0) {
    if (w == 0) return;
    const Complex center(0.5 * (r.x_min + r.x_max), 0.5 * (r.y_min + r.y_max));
    const double diam = r.diameter();
    if (w == 1) {
      if (auto z = newton(center, 1); z && r.contains(*z, 1e-12 * diam) && accepted(*z)) {
        out.push_back({z->real(), z->imag(), 1, {}});
        return;
      }
      if (diam <= 1e-13 * (1.0 + std::abs(center)) || depth > 200) {
        throw Error(ErrorCode::NonConvergence, "Newton refinement failed on an isolated root");
      }
    } else if (diam <= options_.cluster_diameter || depth > 200) {
      Complex z = center;
      if (auto refined = newton(center, w); refined && r.contains(*refined, diam)) z = *refined;
      out.push_back({z.real(), z.imag(), w, {}});
      return;
    }
    subdivide(r, w, out, depth);
  }

 private:
  bool accepted(Complex z) { return sample(z).vanishes; }

  void subdivide(const SearchRect& r, int w, std::vector<Root>& out, int depth) {
    static constexpr std::array<double, 5> kSplits = {0.5, 0.5137, 0.4791, 0.5413, 0.4529};
    for (double split : kSplits) {
      const double xm = r.x_min + split * (r.x_max - r.x_min);
      const double ym = r.y_min + split * (r.y_max - r.y_min);
      const std::array<SearchRect, 4> kids = {SearchRect{r.x_min, xm, r.y_min, ym},
                                              SearchRect{xm, r.x_max, r.y_min, ym},
                                              SearchRect{r.x_min, xm, ym, r.y_max},
                                              SearchRect{xm, r.x_max, ym, r.y_max}};
      std::array<int, 4> windings{};
      bool resolved = true;
      for (std::size_t i = 0; i < 4 && resolved; ++i) {
        const auto wi = winding(kids[i]);
        if (!wi || *wi < 0) {
          resolved = false;
        } else {
          windings[i] = *wi;
        }
      }
      if (!resolved) continue;
      ++trace_.additivity_checks;
      if (windings[0] + windings[1] + windings[2] + windings[3] != w) {
        ++trace_.additivity_violations;
        continue;
      }
      ++trace_.subdivisions;
      for (std::size_t i = 0; i < 4; ++i) isolate(kids[i], windings[i], out, depth + 1);
      return;
    }
    throw Error(ErrorCode::NonConvergence, "could not subdivide a box with consistent windings");
  }

  std::optional<double> phase_change(const Sample& a, const Sample& b) {
    const Sample m = sample(0.5 * (a.z + b.z));
    if (m.vanishes) return std::nullopt;
    const double d = std::arg(b.q / a.q);
    const double d1 = std::arg(m.q / a.q);
    const double d2 = std::arg(b.q / m.q);
    if (std::abs(d1) < kMaxPhaseStep && std::abs(d2) < kMaxPhaseStep &&
        std::abs(d1 + d2 - d) < 1e-3) {
      return d1 + d2;
    }
    if (std::abs(b.z - a.z) <= min_step_ || budget_ == 0) return std::nullopt;
    --budget_;
    const auto left = phase_change(a, m);
    if (!left) return std::nullopt;
    const auto right = phase_change(m, b);
    if (!right) return std::nullopt;
    return *left + *right;
  }

  const SliceFunction& f_;
  CQuaternion c_;
  Quaternion target_;
  RootSearchOptions options_;
  bool unit_norm_;
  RootSearchTrace trace_;
  std::size_t budget_ = 0;
  double min_step_ = 0.0;
};

Fiber classify(const SliceFunction& f, const Quaternion& c, Root& root,
               const RootSearchOptions& options) {
  if (std::abs(root.y) <= options.real_axis_snap) {
    const Fiber real_fiber = fiber(f, c, root.x, 0.0, options.fiber_tol);
    if (real_fiber.kind != Fiber::Kind::Empty) {
      root.y = 0.0;
      return real_fiber;
    }
    root.y = std::abs(root.y);
    if (root.y == 0.0) return real_fiber;
  }
  return fiber(f, c, root.x, root.y, options.fiber_tol);
}

// A multiple zero perturbed by rounding can split into simple zeros a few ulps
// apart on either side of a subdivision line; report them as one cluster.
std::vector<Root> merge_clusters(std::vector<Root> roots, double diameter) {
  std::vector<Root> merged;
  for (const Root& r : roots) {
    auto near = std::find_if(merged.begin(), merged.end(), [&](const Root& m) {
      return std::abs(Complex(m.x - r.x, m.y - r.y)) <= diameter;
    });
    if (near == merged.end()) {
      merged.push_back(r);
      continue;
    }
    const double total = near->winding + r.winding;
    near->x = (near->winding * near->x + r.winding * r.x) / total;
    near->y = (near->winding * near->y + r.winding * r.y) / total;
    near->winding += r.winding;
  }
  return merged;
}

}  // namespace

int boundary_winding(const SliceFunction& f, const Quaternion& c, const SearchRect& rect,
                     const RootSearchOptions& options) {
  RootFinder finder(f, c, options);
  const auto w = finder.winding(rect);
  if (!w) throw Error(ErrorCode::BoundaryZero, "Q_c vanishes on the rectangle boundary");
  return *w;
}

RootSearchResult search_roots(const SliceFunction& f, const Quaternion& c, const SearchRect& rect,
                              const RootSearchOptions& options) {
  rect.validate();
  RootFinder finder(f, c, options);
  SearchRect searched = rect;
  std::optional<int> w = finder.winding(searched);
  int attempt = 0;
  while (!w && attempt < options.perturbation_attempts) {
    ++attempt;
    searched = rect.expanded(options.perturbation * rect.diameter() * attempt);
    w = finder.winding(searched);
  }
  finder.trace().perturbations = attempt;
  if (!w) {
    throw Error(ErrorCode::BoundaryZero,
                "Q_c vanishes on the rectangle boundary after perturbation");
  }
  if (*w < 0) throw Error(ErrorCode::NonConvergence, "negative winding for a holomorphic Q_c");
  finder.trace().boundary_winding = *w;

  std::vector<Root> raw;
  finder.isolate(searched, *w, raw);
  raw = merge_clusters(std::move(raw), options.cluster_diameter);

  RootSearchResult result;
  for (Root& r : raw) {
    if (r.y < -options.real_axis_snap) continue;  // mirror image of an upper root
    r.fiber = classify(f, c, r, options);
    result.roots.push_back(r);
  }
  std::sort(result.roots.begin(), result.roots.end(),
            [](const Root& a, const Root& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  result.trace = finder.trace();
  result.searched = searched;
  return result;
}

AvoidanceScan avoidance_scan(const SliceFunction& f, const Quaternion& c, const SearchRect& rect,
                             std::size_t grid_n, const RootSearchOptions& options) {
  if (grid_n < 2) throw Error(ErrorCode::InvalidArgument, "avoidance scan needs grid_n >= 2");
  rect.validate();
  AvoidanceScan scan;
  scan.min_abs_q = std::numeric_limits<double>::infinity();
  double max_relative = 0.0;
  for (const QcSample& s : sample_qc_grid(f, c, rect, grid_n, grid_n)) {
    const Complex z(s.x, s.y);
    if (s.abs_q < scan.min_abs_q) {
      scan.min_abs_q = s.abs_q;
      scan.argmin = z;
    }
    max_relative = std::max(max_relative, s.abs_q / qc_scale(f, c, z));
  }
  try {
    RootSearchResult found = search_roots(f, c, rect, options);
    scan.roots = std::move(found.roots);
    scan.trace = found.trace;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BoundaryZero || max_relative > options.tol) throw;
    scan.degenerate = true;
  }
  return scan;
}

std::vector<QcSample> sample_qc_grid(const SliceFunction& f, const Quaternion& c,
                                     const SearchRect& rect, std::size_t nx, std::size_t ny) {
  if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2x2 points");
  std::vector<QcSample> out;
  out.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = rect.y_min + (rect.y_max - rect.y_min) * static_cast<double>(j) /
                                      static_cast<double>(ny - 1);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = rect.x_min + (rect.x_max - rect.x_min) * static_cast<double>(i) /
                                        static_cast<double>(nx - 1);
      out.push_back({x, y, std::abs(qc(f, c, Complex(x, y)))});
    }
  }
  return out;
}

}  // namespace qpicard
