#pragma once

#include <cstddef>
#include <vector>

#include "qpicard/cquaternion.hpp"
#include "qpicard/quaternion.hpp"
#include "qpicard/slice_function.hpp"

namespace qpicard {

/// Closed rectangle [x_min, x_max] x [y_min, y_max] in the upper half-plane.
struct SearchRect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  /// Throws Error(InvalidArgument) unless y_min >= 0, x_min < x_max and y_min < y_max.
  void validate() const;
  double diameter() const;
  bool contains(Complex z, double margin = 0.0) const;
  SearchRect expanded(double delta) const {
    return {x_min - delta, x_max + delta, y_min - delta, y_max + delta};
  }
};

/// The set of imaginary units H with f(x + yH) = c at a zero of Q_c.
struct Fiber {
  enum class Kind { Empty, Point, Sphere };

  Kind kind = Kind::Empty;
  /// Meaningful for Point only; at real points it is the canonical I.
  ImaginaryUnit h;

  static Fiber empty() { return {}; }
  static Fiber point(const ImaginaryUnit& u) { return {Kind::Point, u}; }
  static Fiber sphere() { return {Kind::Sphere, ImaginaryUnit()}; }
};

struct Root {
  double x = 0.0;
  double y = 0.0;
  /// Winding number of Q_c around the isolating box (multiplicity).
  int winding = 0;
  Fiber fiber;
};

/// Q_c(z) = <F(z) - c, F(z) - c>.
Complex qc(const SliceFunction& f, const Quaternion& c, Complex z);
/// Q_c'(z) = 2 <F'(z), F(z) - c>.
Complex qc_derivative(const SliceFunction& f, const Quaternion& c, Complex z);
/// Magnitude against which |Q_c(z)| is judged: 1 + |F(z)|^2 + |c|^2.
double qc_scale(const SliceFunction& f, const Quaternion& c, Complex z);

/// |Q_c(x+iy)| <= tol * qc_scale, i.e. f attains c on x + yS. Requires y >= 0.
bool attains(const SliceFunction& f, const Quaternion& c, double x, double y, double tol = 1e-12);

/// Solves f(x + yH) = c for H.
///
/// For y = 0 the fiber is the real point itself (reported as Point(I)) or
/// empty. For y > 0 it is Point((c - F1) F2^{-1}) when that lies on S, the
/// whole sphere when F2 = 0 and F1 = c, and empty otherwise. Tolerances are
/// relative to 1 + |c|. Requires y >= 0.
Fiber fiber(const SliceFunction& f, const Quaternion& c, double x, double y, double tol = 1e-9);

struct RootSearchOptions {
  /// Relative threshold on |Q_c| / qc_scale for boundary zeros and accepted roots.
  double tol = 1e-13;
  /// Boxes with winding >= 2 below this diameter are reported as one cluster.
  double cluster_diameter = 1e-6;
  int max_newton_iterations = 100;
  int perturbation_attempts = 3;
  /// Outward edge shift per attempt, relative to the diameter.
  double perturbation = 1e-6;
  double real_axis_snap = 1e-7;
  /// Relative tolerance used when classifying the fiber of a refined root.
  double fiber_tol = 1e-6;
  std::size_t initial_edge_samples = 32;
};

/// Diagnostics of one search.
struct RootSearchTrace {
  int boundary_winding = 0;
  int perturbations = 0;
  std::size_t subdivisions = 0;
  std::size_t additivity_checks = 0;
  std::size_t additivity_violations = 0;
  std::size_t evaluations = 0;
};

struct RootSearchResult {
  std::vector<Root> roots;
  RootSearchTrace trace;
  /// The rectangle actually searched (after any outward perturbation).
  SearchRect searched;
};

/// All zeros of Q_c in rect by argument principle, quadrisection and Newton.
///
/// Throws Error(BoundaryZero) if the boundary winding cannot be resolved
/// after the allowed perturbations, Error(NonConvergence) if refinement fails.
/// Roots are ordered by (x, y).
RootSearchResult search_roots(const SliceFunction& f, const Quaternion& c, const SearchRect& rect,
                              const RootSearchOptions& options = {});

inline std::vector<Root> find_roots(const SliceFunction& f, const Quaternion& c,
                                    const SearchRect& rect, double tol = 1e-13) {
  RootSearchOptions options;
  options.tol = tol;
  return search_roots(f, c, rect, options).roots;
}

/// Winding number of Q_c along the positively oriented boundary of rect.
/// Throws Error(BoundaryZero) if Q_c (numerically) vanishes on the boundary.
int boundary_winding(const SliceFunction& f, const Quaternion& c, const SearchRect& rect,
                     const RootSearchOptions& options = {});

struct AvoidanceScan {
  double min_abs_q = 0.0;
  Complex argmin;
  std::vector<Root> roots;
  /// Q_c vanishes on the whole grid (f is constant equal to c).
  bool degenerate = false;
  RootSearchTrace trace;
};

/// find_roots plus the minimum of |Q_c| on a grid_n x grid_n grid. An empty
/// root list certifies avoidance within rect only. Requires grid_n >= 2.
AvoidanceScan avoidance_scan(const SliceFunction& f, const Quaternion& c, const SearchRect& rect,
                             std::size_t grid_n, const RootSearchOptions& options = {});

struct QcSample {
  double x;
  double y;
  double abs_q;
};

/// |Q_c| on an nx x ny grid, row-major in y, for contour plotting.
std::vector<QcSample> sample_qc_grid(const SliceFunction& f, const Quaternion& c,
                                     const SearchRect& rect, std::size_t nx, std::size_t ny);

}  // namespace qpicard
