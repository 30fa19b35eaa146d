#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "qpicard/cquaternion.hpp"
#include "qpicard/quaternion.hpp"
#include "qpicard/slice_function.hpp"
#include "qpicard/zero_locus.hpp"

namespace qpicard {

using Targets5 = std::array<Quaternion, 5>;
using Complex4 = std::array<Complex, 4>;
using Complex5 = std::array<Complex, 5>;

/// No real affine 3-space contains all five points: the differences
/// c_i - c_5 have rank 4, judged by sigma_min > rel_tol * sigma_max.
bool general_position(const Targets5& c, double rel_tol = 1e-10);

/// Five targets in general position, translated so that c_5 = 0, with the
/// matrix B (B^{-1} has rows c_i) and the Gram matrix M = B^t B.
///
/// f avoids c_i iff f - c_5 avoids c_i - c_5, so the translation is applied
/// to functions as well (see five_value_harness).
class FiveValueProblem {
 public:
  const Targets5& targets() const { return targets_; }
  const Quaternion& offset() const { return targets_[4]; }
  /// c_i - c_5 for i = 1..4.
  const std::array<Quaternion, 4>& translated() const { return translated_; }
  /// <c_i, c_i> of the translated targets.
  const std::array<double, 4>& target_norms2() const { return norms2_; }
  const Eigen::Matrix4d& basis_inverse() const { return basis_inverse_; }
  const Eigen::Matrix4d& b() const { return b_; }
  const Eigen::Matrix4d& gram() const { return gram_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  friend FiveValueProblem build_problem(const Targets5& c);

  Targets5 targets_;
  std::array<Quaternion, 4> translated_;
  std::array<double, 4> norms2_{};
  Eigen::Matrix4d basis_inverse_;
  Eigen::Matrix4d b_;
  Eigen::Matrix4d gram_;
  double min_eigenvalue_ = 0.0;
};

/// Throws Error(NotGeneralPosition), or Error(SingularBasis) if M fails the
/// Cholesky test (impossible in general position).
FiveValueProblem build_problem(const Targets5& c);

/// phi(z) = (<z,z> - 2<z,c_i> + <c_i,c_i>)_{i=1..4}, <z,z>).
Complex5 phi_map(const FiveValueProblem& prob, const CQuaternion& z);

/// psi(w; p) = p - u^t M u with u_i = -(w_i - p - <c_i,c_i>)/2. Vanishes on Z.
Complex psi(const FiveValueProblem& prob, const Complex4& w, Complex p);
inline Complex psi(const FiveValueProblem& prob, const Complex5& v) {
  return psi(prob, Complex4{v[0], v[1], v[2], v[3]}, v[4]);
}

/// mu(v) = B (-(v_i - <c_i,c_i> - v_5)/2)_i, the inverse of phi on Z.
CQuaternion mu_inverse(const FiveValueProblem& prob, const Complex5& v);

/// Laurent expansion of psi(alpha_1 z^m_1, ..., alpha_5 z^m_5).
struct LaurentCertificate {
  enum class Verdict {
    NonVanishing,   // some coefficient is nonzero: the curve leaves Z
    ConstantCurve,  // m = 0
    AllZero,        // the curve lies in Z; impossible for m != 0
  };

  std::array<int, 5> m{};
  std::array<double, 5> alpha{};
  /// Collected coefficients by degree.
  std::map<int, double> coefficients;
  Verdict verdict = Verdict::AllZero;
  /// Lowest degree with a nonzero coefficient, and that coefficient.
  int degree = 0;
  double value = 0.0;
  bool exact = false;
};

/// Floating-point certificate; a coefficient counts as nonzero above
/// 1e-12 times the largest accumulated term magnitude. Throws
/// Error(InvalidAlpha) if some alpha_i = 0.
LaurentCertificate monomial_curve_check(const FiveValueProblem& prob,
                                        const std::array<double, 5>& alpha,
                                        const std::array<int, 5>& m);

/// The quadric of a problem in exact rational arithmetic. Doubles are
/// dyadic rationals, so targets and alphas convert without rounding.
class ExactQuadric {
 public:
  explicit ExactQuadric(const FiveValueProblem& prob);
  ~ExactQuadric();
  ExactQuadric(ExactQuadric&&) noexcept;
  ExactQuadric& operator=(ExactQuadric&&) noexcept;

  /// Exact certificate: verdicts compare coefficients against exact zero.
  LaurentCertificate check(const std::array<double, 5>& alpha, const std::array<int, 5>& m) const;

  /// M rounded to double (agrees with the floating Gram matrix to rounding).
  Eigen::Matrix4d gram() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ComponentTrace {
  double min_abs = 0.0;
  std::size_t vanishing_count = 0;
  /// First few grid points where the component vanishes.
  std::vector<Complex> vanishing_points;
  bool identically_zero = false;
};

struct FiveValueHarnessReport {
  std::size_t points = 0;
  /// max |psi(g(z))| / (1 + |F(z)|^4).
  double max_scaled_residual = 0.0;
  bool stays_in_variety = false;
  /// Component i vanishes at z iff f attains c_i on the sphere over z.
  std::array<ComponentTrace, 5> components;
};

/// Traces g = phi(F - c_5) on a grid_n x grid_n grid over rect.
FiveValueHarnessReport five_value_harness(const FiveValueProblem& prob, const SliceFunction& f,
                                          const SearchRect& rect, std::size_t grid_n = 41,
                                          double residual_tol = 1e-8, double vanish_tol = 1e-10);

}  // namespace qpicard
