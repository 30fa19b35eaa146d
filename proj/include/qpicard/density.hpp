#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpicard/constructions.hpp"
#include "qpicard/quaternion.hpp"
#include "qpicard/slice_function.hpp"
#include "qpicard/zero_locus.hpp"

namespace qpicard {

/// Grid points within epsilon of the plane are skipped.
struct DensityExclusion {
  AffinePlane plane;
  double epsilon = 1e-3;
};

struct DensityOptions {
  double radius = 1.0;
  double step = 0.5;
  std::optional<DensityExclusion> exclusion;
  /// When set, f is report->g and preimages come from the construction.
  std::optional<AvoidanceReport> report;
  /// Root search rectangle for functions without a closed-form preimage.
  SearchRect rect{-10.0, 10.0, 0.0, 10.0};
  /// Relative residual |f(q) - c| / (1 + |c|) accepted for a closed-form preimage.
  double residual_tol = 1e-9;
  /// Unattained points kept in the report.
  std::size_t max_listed = 32;
};

struct DensityReport {
  std::size_t grid_points = 0;
  std::size_t excluded = 0;
  std::size_t considered = 0;
  std::size_t attained = 0;
  /// attained / considered (1 if nothing was considered).
  double fraction = 1.0;
  /// Largest distance from an unattained grid point to the nearest attained
  /// one; 0 if all are attained, infinite if none is.
  double max_gap = 0.0;
  std::vector<Quaternion> unattained;
};

/// Tries to attain every point of step * Z^4 inside the closed ball of the
/// given radius. Throws Error(InvalidArgument) for step <= 0 or radius < 0.
DensityReport run_density_scan(const SliceFunction& f, const DensityOptions& options);

/// Whether f attains c: closed-form preimage where available, otherwise
/// find_roots over rect (Q_c identically zero counts as attained).
bool attains_value(const SliceFunction& f, const Quaternion& c, const DensityOptions& options);

}  // namespace qpicard
