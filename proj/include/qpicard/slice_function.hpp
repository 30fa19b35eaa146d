#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpicard/cquaternion.hpp"
#include "qpicard/quaternion.hpp"

namespace qpicard {

/// Scalar entire series with real Taylor coefficients.
enum class SeriesKind { Exp, Sin, Cos };

/// Entire functions available by name.
enum class NamedFunction {
  SinJCosK,  // stem J(x)sin z + K(x)cos z
  Exp,
  Sin,
  Cos,
};

std::string_view name_of(NamedFunction name);
std::optional<NamedFunction> parse_named_function(std::string_view name);
std::string_view name_of(SeriesKind kind);
std::optional<SeriesKind> parse_series_kind(std::string_view name);

/// k-th Taylor coefficient of the scalar series.
double series_coefficient(SeriesKind kind, std::size_t k);
/// Closed-form value (library complex functions).
Complex series_value(SeriesKind kind, Complex z);
Complex series_derivative(SeriesKind kind, Complex z);
/// Smallest n such that the factorial tail sum_{k>n} r^k/k! is below tol.
std::size_t truncation_depth(double radius, double tol = 1e-16);
/// sum_{k<=n} s_k z^k by compensated (double-double) Horner.
Complex series_partial_sum(SeriesKind kind, Complex z, std::size_t n);

/// A weighted scalar series s(q) w with real-coefficient s.
struct SeriesTerm {
  SeriesKind kind;
  Quaternion weight;

  friend bool operator==(const SeriesTerm&, const SeriesTerm&) = default;
};

/// Entire slice regular function f(q) = sum_k q^k a_k.
///
/// The coefficients are a finite polynomial part plus weighted scalar
/// series, so a_k = p_k + sum_t s_t,k w_t. Coefficients always sit to the
/// right of the powers of q. The representation is closed under the
/// automorphism/affine transform, which keeps transformed functions
/// introspectable.
class SliceFunction {
 public:
  /// The zero function.
  SliceFunction() = default;

  static SliceFunction polynomial(std::vector<Quaternion> coeffs, std::string description = {});
  static SliceFunction series(std::vector<Quaternion> poly, std::vector<SeriesTerm> terms,
                              std::string description = {});
  static SliceFunction named(NamedFunction name);

  const std::vector<Quaternion>& polynomial_part() const { return poly_; }
  const std::vector<SeriesTerm>& series_terms() const { return terms_; }
  const std::string& description() const { return description_; }

  bool is_polynomial() const { return terms_.empty(); }
  bool is_constant() const;
  /// Degree of a polynomial function (0 for constants, including zero).
  std::optional<std::size_t> degree() const;
  /// a_k.
  Quaternion coefficient(std::size_t k) const;
  /// The polynomial a_0 + ... + q^n a_n.
  SliceFunction truncated(std::size_t n) const;

  /// Same coefficients, ignoring the description.
  bool same_coefficients(const SliceFunction& other) const;

 private:
  std::vector<Quaternion> poly_;
  std::vector<SeriesTerm> terms_;
  std::string description_;
};

/// F(z) = F1(z)(x)1 + F2(z)(x)i at one point.
struct StemValue {
  Quaternion f1;
  Quaternion f2;
};

/// F(z) = sum_k a_k (x) z^k.
CQuaternion stem_eval(const SliceFunction& f, Complex z);
/// F'(z) from term-wise differentiation.
CQuaternion stem_derivative(const SliceFunction& f, Complex z);
inline StemValue stem_value(const SliceFunction& f, Complex z) {
  const CQuaternion v = stem_eval(f, z);
  return {v.real_part(), v.imag_part()};
}

/// f(q) = F1(x+iy) + H F2(x+iy) for q = x + yH, y >= 0. Real q uses H = I.
Quaternion eval(const SliceFunction& f, const Quaternion& q);

/// f(q) by quaternionic Horner on the coefficients, a_0 + q(a_1 + q(...)).
/// Series are truncated with the factorial tail bound for |q|.
Quaternion horner_eval(const SliceFunction& f, const Quaternion& q);

/// F1 = (f(x+yI) + f(x-yI))/2, F2 = -I (f(x+yI) - f(x-yI))/2, from Horner
/// point values.
StemValue stem_pair_check(const SliceFunction& f, double x, double y, const ImaginaryUnit& unit);

/// g(q) = (sum_k q^k aut(a_k)) lambda + p. Throws Error(InvalidScale) for lambda = 0.
SliceFunction transform(const SliceFunction& f, const Automorphism& aut, const Quaternion& lambda,
                        const Quaternion& p);

}  // namespace qpicard
