#include "qpicard/slice_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qpicard/errors.hpp"

namespace qpicard {

namespace {

// Double-double helpers for the compensated partial sums.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DoubleDouble add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return two_sum(s.hi, s.lo);
}

DoubleDouble mul(DoubleDouble a, double b) {
  const double p = a.hi * b;
  const double e = std::fma(a.hi, b, -p);
  return two_sum(p, e + a.lo * b);
}

DoubleDouble negate(DoubleDouble a) { return {-a.hi, -a.lo}; }

DoubleDouble div(DoubleDouble a, double b) {
  const double q1 = a.hi / b;
  const double p = q1 * b;
  const double e = std::fma(q1, b, -p);
  const double q2 = ((a.hi - p) - e + a.lo) / b;
  return two_sum(q1, q2);
}

// Signed 1/k! (times the parity pattern of the series) in double-double.
DoubleDouble exact_coefficient(SeriesKind kind, std::size_t k) {
  if (kind == SeriesKind::Sin && k % 2 == 0) return {};
  if (kind == SeriesKind::Cos && k % 2 == 1) return {};
  DoubleDouble c{1.0, 0.0};
  for (std::size_t j = 2; j <= k; ++j) c = div(c, static_cast<double>(j));
  if (kind != SeriesKind::Exp && (k / 2) % 2 == 1) c = negate(c);
  return c;
}

}  // namespace

std::string_view name_of(NamedFunction name) {
  switch (name) {
    case NamedFunction::SinJCosK: return "sinJcosK";
    case NamedFunction::Exp: return "exp";
    case NamedFunction::Sin: return "sin";
    case NamedFunction::Cos: return "cos";
  }
  return "";
}

std::optional<NamedFunction> parse_named_function(std::string_view name) {
  for (auto n : {NamedFunction::SinJCosK, NamedFunction::Exp, NamedFunction::Sin,
                 NamedFunction::Cos}) {
    if (name_of(n) == name) return n;
  }
  return std::nullopt;
}

std::string_view name_of(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::Exp: return "exp";
    case SeriesKind::Sin: return "sin";
    case SeriesKind::Cos: return "cos";
  }
  return "";
}

std::optional<SeriesKind> parse_series_kind(std::string_view name) {
  for (auto k : {SeriesKind::Exp, SeriesKind::Sin, SeriesKind::Cos}) {
    if (name_of(k) == name) return k;
  }
  return std::nullopt;
}

double series_coefficient(SeriesKind kind, std::size_t k) {
  const DoubleDouble c = exact_coefficient(kind, k);
  return c.hi + c.lo;
}

Complex series_value(SeriesKind kind, Complex z) {
  switch (kind) {
    case SeriesKind::Exp: return std::exp(z);
    case SeriesKind::Sin: return std::sin(z);
    case SeriesKind::Cos: return std::cos(z);
  }
  return {};
}

Complex series_derivative(SeriesKind kind, Complex z) {
  switch (kind) {
    case SeriesKind::Exp: return std::exp(z);
    case SeriesKind::Sin: return std::cos(z);
    case SeriesKind::Cos: return -std::sin(z);
  }
  return {};
}

std::size_t truncation_depth(double radius, double tol) {
  const double r = std::max(radius, 1.0);
  // log of r^(n+1)/(n+1)! times the geometric factor 1/(1 - r/(n+2)).
  for (std::size_t n = 1;; ++n) {
    const double m = static_cast<double>(n);
    if (r >= m + 2.0) continue;
    const double log_term = (m + 1.0) * std::log(r) - std::lgamma(m + 2.0);
    const double log_tail = log_term - std::log1p(-r / (m + 2.0));
    if (log_tail < std::log(tol)) return n;
  }
}

Complex series_partial_sum(SeriesKind kind, Complex z, std::size_t n) {
  DoubleDouble re, im;
  for (std::size_t k = n + 1; k-- > 0;) {
    const DoubleDouble new_re = add(mul(re, z.real()), negate(mul(im, z.imag())));
    const DoubleDouble new_im = add(mul(re, z.imag()), mul(im, z.real()));
    re = add(new_re, exact_coefficient(kind, k));
    im = new_im;
  }
  return {re.hi + re.lo, im.hi + im.lo};
}

SliceFunction SliceFunction::polynomial(std::vector<Quaternion> coeffs, std::string description) {
  return series(std::move(coeffs), {}, std::move(description));
}

SliceFunction SliceFunction::series(std::vector<Quaternion> poly, std::vector<SeriesTerm> terms,
                                    std::string description) {
  SliceFunction f;
  while (!poly.empty() && poly.back() == Quaternion()) poly.pop_back();
  // Merge repeated kinds so that cancelling weights disappear.
  std::vector<SeriesTerm> merged;
  for (const auto& t : terms) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const SeriesTerm& m) { return m.kind == t.kind; });
    if (it == merged.end()) {
      merged.push_back(t);
    } else {
      it->weight += t.weight;
    }
  }
  terms = std::move(merged);
  std::erase_if(terms, [](const SeriesTerm& t) { return t.weight == Quaternion(); });
  f.poly_ = std::move(poly);
  f.terms_ = std::move(terms);
  f.description_ = std::move(description);
  return f;
}

SliceFunction SliceFunction::named(NamedFunction name) {
  const std::string desc(name_of(name));
  switch (name) {
    case NamedFunction::SinJCosK:
      return series({}, {{SeriesKind::Sin, Quaternion::j()}, {SeriesKind::Cos, Quaternion::k()}},
                    desc);
    case NamedFunction::Exp:
      return series({}, {{SeriesKind::Exp, Quaternion::one()}}, desc);
    case NamedFunction::Sin:
      return series({}, {{SeriesKind::Sin, Quaternion::one()}}, desc);
    case NamedFunction::Cos:
      return series({}, {{SeriesKind::Cos, Quaternion::one()}}, desc);
  }
  return {};
}

bool SliceFunction::is_constant() const {
  // exp, sin and cos are linearly independent of each other and of the
  // polynomials, so any nonzero series weight makes f non-constant.
  return terms_.empty() && poly_.size() <= 1;
}

std::optional<std::size_t> SliceFunction::degree() const {
  if (!is_polynomial()) return std::nullopt;
  return poly_.empty() ? 0 : poly_.size() - 1;
}

Quaternion SliceFunction::coefficient(std::size_t k) const {
  Quaternion a = k < poly_.size() ? poly_[k] : Quaternion();
  for (const auto& t : terms_) {
    const double s = series_coefficient(t.kind, k);
    if (s != 0.0) a += s * t.weight;
  }
  return a;
}

SliceFunction SliceFunction::truncated(std::size_t n) const {
  std::vector<Quaternion> coeffs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) coeffs[k] = coefficient(k);
  return polynomial(std::move(coeffs), description_.empty() ? "" : description_ + " (truncated)");
}

bool SliceFunction::same_coefficients(const SliceFunction& other) const {
  return poly_ == other.poly_ && terms_ == other.terms_;
}

CQuaternion stem_eval(const SliceFunction& f, Complex z) {
  CQuaternion acc;
  const auto& poly = f.polynomial_part();
  for (std::size_t k = poly.size(); k-- > 0;) {
    acc *= z;
    acc += CQuaternion::real(poly[k]);
  }
  for (const auto& t : f.series_terms()) {
    acc += CQuaternion::tensor(t.weight, series_value(t.kind, z));
  }
  return acc;
}

CQuaternion stem_derivative(const SliceFunction& f, Complex z) {
  CQuaternion acc;
  const auto& poly = f.polynomial_part();
  for (std::size_t k = poly.size(); k-- > 1;) {
    acc *= z;
    acc += CQuaternion::real(poly[k] * static_cast<double>(k));
  }
  for (const auto& t : f.series_terms()) {
    acc += CQuaternion::tensor(t.weight, series_derivative(t.kind, z));
  }
  return acc;
}

Quaternion eval(const SliceFunction& f, const Quaternion& q) {
  const double y = q.imag_norm();
  const CQuaternion stem = stem_eval(f, Complex(q.w, y));
  const Quaternion f1 = stem.real_part();
  if (y == 0.0) {
    // F2 vanishes on the real axis, so the canonical unit is harmless.
    if (stem.imag_part().norm() > 1e-12 * (1.0 + f1.norm())) {
      throw std::logic_error("stem function is not real on the real axis");
    }
    return f1;
  }
  const Quaternion h = q.imag() / y;
  return f1 + h * stem.imag_part();
}

Quaternion horner_eval(const SliceFunction& f, const Quaternion& q) {
  std::size_t n = f.polynomial_part().empty() ? 0 : f.polynomial_part().size() - 1;
  if (!f.is_polynomial()) n = std::max(n, truncation_depth(q.norm()));
  Quaternion acc = f.coefficient(n);
  for (std::size_t k = n; k-- > 0;) acc = q * acc + f.coefficient(k);
  return acc;
}

StemValue stem_pair_check(const SliceFunction& f, double x, double y, const ImaginaryUnit& unit) {
  const Quaternion i = unit.quaternion();
  const Quaternion plus = horner_eval(f, slice_point(x, y, unit));
  const Quaternion minus = horner_eval(f, slice_point(x, -y, unit));
  return {0.5 * (plus + minus), -0.5 * (i * (plus - minus))};
}

SliceFunction transform(const SliceFunction& f, const Automorphism& aut, const Quaternion& lambda,
                        const Quaternion& p) {
  if (lambda.norm2() == 0.0) throw Error(ErrorCode::InvalidScale, "lambda must be nonzero");
  std::vector<Quaternion> poly;
  poly.reserve(std::max<std::size_t>(1, f.polynomial_part().size()));
  for (const auto& a : f.polynomial_part()) poly.push_back(aut(a) * lambda);
  if (poly.empty()) poly.emplace_back();
  poly[0] += p;
  std::vector<SeriesTerm> terms;
  for (const auto& t : f.series_terms()) terms.push_back({t.kind, aut(t.weight) * lambda});
  return SliceFunction::series(std::move(poly), std::move(terms),
                               f.description().empty() ? "" : "transformed " + f.description());
}

}  // namespace qpicard
