#include "qpicard/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "qpicard/errors.hpp"

namespace qpicard {

namespace {

using Index = std::array<int, 4>;

struct IndexHash {
  std::size_t operator()(const Index& i) const noexcept {
    std::size_t h = 0;
    for (int v : i) h = h * 1000003u + static_cast<std::size_t>(v + 0x40000000);
    return h;
  }
};

Quaternion at(const Index& i, double step) {
  return {i[0] * step, i[1] * step, i[2] * step, i[3] * step};
}

bool residual_ok(const SliceFunction& f, const Quaternion& q, const Quaternion& c, double tol) {
  return (eval(f, q) - c).norm() <= tol * (1.0 + c.norm());
}

bool attained_by_search(const SliceFunction& f, const Quaternion& c, const SearchRect& rect) {
  try {
    for (const Root& r : find_roots(f, c, rect)) {
      if (r.fiber.kind != Fiber::Kind::Empty) return true;
    }
    return false;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BoundaryZero) throw;
    // Q_c vanishing on the whole boundary means Q_c = 0, so f = c on a sphere.
    for (const QcSample& s : sample_qc_grid(f, c, rect, 9, 9)) {
      if (s.abs_q > 1e-10 * qc_scale(f, c, Complex(s.x, s.y))) return false;
    }
    return true;
  }
}

// Distance from idx to the nearest attained index, scanning L-infinity shells
// until the shell radius exceeds the best Euclidean distance found.
double nearest_attained(const Index& idx, const std::unordered_set<Index, IndexHash>& attained,
                        int max_shell) {
  double best2 = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= max_shell; ++r) {
    if (static_cast<double>(r) * r > best2) break;
    for (int a = -r; a <= r; ++a) {
      for (int b = -r; b <= r; ++b) {
        for (int c = -r; c <= r; ++c) {
          for (int d = -r; d <= r; ++d) {
            if (std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}) != r) continue;
            const Index n{idx[0] + a, idx[1] + b, idx[2] + c, idx[3] + d};
            if (attained.count(n)) {
              best2 = std::min(best2, static_cast<double>(a * a + b * b + c * c + d * d));
            }
          }
        }
      }
    }
  }
  return std::sqrt(best2);
}

}  // namespace

bool attains_value(const SliceFunction& f, const Quaternion& c, const DensityOptions& options) {
  try {
    if (options.report) {
      return residual_ok(options.report->g, transformed_preimage(*options.report, c), c,
                         options.residual_tol);
    }
    if (is_trig_example(f)) return residual_ok(f, trig_preimage(c), c, options.residual_tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Unreachable) return false;
    throw;
  }
  return attained_by_search(f, c, options.rect);
}

DensityReport run_density_scan(const SliceFunction& f, const DensityOptions& options) {
  if (!(options.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (!(options.radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be >= 0");
  const int n = static_cast<int>(std::floor(options.radius / options.step));
  const double r2 = options.radius * options.radius * (1.0 + 1e-12);

  DensityReport report;
  std::unordered_set<Index, IndexHash> attained;
  std::vector<Index> missed;
  Index idx;
  for (idx[0] = -n; idx[0] <= n; ++idx[0]) {
    for (idx[1] = -n; idx[1] <= n; ++idx[1]) {
      for (idx[2] = -n; idx[2] <= n; ++idx[2]) {
        for (idx[3] = -n; idx[3] <= n; ++idx[3]) {
          const Quaternion c = at(idx, options.step);
          if (c.norm2() > r2) continue;
          ++report.grid_points;
          if (options.exclusion &&
              options.exclusion->plane.distance(c) <= options.exclusion->epsilon) {
            ++report.excluded;
            continue;
          }
          ++report.considered;
          if (attains_value(f, c, options)) {
            attained.insert(idx);
          } else {
            missed.push_back(idx);
          }
        }
      }
    }
  }
  report.attained = attained.size();
  if (report.considered > 0) {
    report.fraction = static_cast<double>(report.attained) / static_cast<double>(report.considered);
  }
  if (!missed.empty()) {
    if (attained.empty()) {
      report.max_gap = std::numeric_limits<double>::infinity();
    } else {
      for (const Index& m : missed) {
        report.max_gap = std::max(report.max_gap,
                                  options.step * nearest_attained(m, attained, 2 * n + 1));
      }
    }
  }
  for (std::size_t i = 0; i < missed.size() && i < options.max_listed; ++i) {
    report.unattained.push_back(at(missed[i], options.step));
  }
  return report;
}

}  // namespace qpicard
