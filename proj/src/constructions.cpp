#include "qpicard/constructions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "qpicard/errors.hpp"

namespace qpicard {

SliceFunction trig_example() { return SliceFunction::named(NamedFunction::SinJCosK); }

bool is_trig_example(const SliceFunction& f) { return f.same_coefficients(trig_example()); }

Quaternion trig_preimage(const Quaternion& c) {
  const double rho = std::hypot(c.y, c.z);
  if (rho == 0.0) throw Error(ErrorCode::Unreachable, "values in C_I are never attained");
  const double x = std::atan2(c.y, c.z);
  // cosh y - 1 = (c1^2 + c2^2 + (rho - 1)^2) / (2 rho), free of cancellation.
  const double excess = (c.w * c.w + c.x * c.x + (rho - 1.0) * (rho - 1.0)) / (2.0 * rho);
  const double y = 2.0 * std::asinh(std::sqrt(0.5 * excess));
  if (y == 0.0) return Quaternion(x);

  const StemValue s = stem_value(trig_example(), Complex(x, y));
  // F2 = sinh(y) (J cos x - K sin x) never vanishes for y > 0.
  const Quaternion h = (c - s.f1) * s.f2.inverse();
  // For y near rounding level |F2| ~ y, so h is noise but any unit does.
  if (y <= 1e-8) {
    const ImaginaryUnit u =
        h.imag_norm() > 0.0 ? ImaginaryUnit::from_imaginary_part(h) : ImaginaryUnit::i();
    return slice_point(x, y, u);
  }
  if (!is_imaginary_unit(h, 1e-6)) {
    throw std::logic_error("trig preimage: fiber unit left the sphere");
  }
  return slice_point(x, y, ImaginaryUnit::from_imaginary_part(h));
}

Quaternion pull_back_target(const AvoidanceReport& report, const Quaternion& c) {
  return report.aut.inverse()((c - report.p) * report.lambda.inverse());
}

double max_off_slice(const AvoidanceReport& report) {
  double worst = 0.0;
  for (const auto& t : report.transformed_targets) {
    worst = std::max({worst, std::abs(t.y), std::abs(t.z)});
  }
  return worst;
}

Quaternion transformed_preimage(const AvoidanceReport& report, const Quaternion& c) {
  const Quaternion t = pull_back_target(report, c);
  // Points of the avoided plane pull back to C_I only up to rounding.
  if (std::hypot(t.y, t.z) <= 1e-13 * (1.0 + t.norm())) {
    throw Error(ErrorCode::Unreachable, "value lies in the avoided plane");
  }
  return report.aut(trig_preimage(t));
}

namespace {

AvoidanceReport build_report(const Automorphism& aut, const Quaternion& lambda,
                             const Quaternion& p, std::vector<Quaternion> avoided) {
  AvoidanceReport report;
  report.g = transform(trig_example(), aut, lambda, p);
  report.aut = aut;
  report.lambda = lambda;
  report.p = p;
  report.avoided = std::move(avoided);
  for (const auto& c : report.avoided) {
    report.transformed_targets.push_back(pull_back_target(report, c));
  }
  return report;
}

}  // namespace

AvoidanceReport avoid_three(const Quaternion& c1, const Quaternion& c2, const Quaternion& c3) {
  if (c1 == c2 || c1 == c3 || c2 == c3) {
    throw Error(ErrorCode::DuplicatePoints, "the three values must be pairwise distinct");
  }
  const Quaternion lambda = c2 - c1;
  const Quaternion d = (c3 - c1) * lambda.inverse();
  // A real d lies in every slice; keep the identity then.
  const ImaginaryUnit h =
      d.imag_norm() > 0.0 ? ImaginaryUnit::from_imaginary_part(d) : ImaginaryUnit::i();
  return build_report(automorphism_sending_i_to(h), lambda, c1, {c1, c2, c3});
}

AvoidanceReport plane_avoider(const Quaternion& p0, const Quaternion& u, const Quaternion& v) {
  if (u.norm2() == 0.0 || v.norm2() == 0.0) {
    throw Error(ErrorCode::DegeneratePlane, "spanning vectors must be nonzero");
  }
  const Quaternion s = v * u.inverse();
  if (s.imag_norm() <= 1e-12 * s.norm()) {
    throw Error(ErrorCode::DegeneratePlane, "spanning vectors are linearly dependent");
  }
  // v = (Re s + |Im s| H) u, so span{u, v} = span{u, H u} = aut(C_I) u.
  const ImaginaryUnit h = ImaginaryUnit::from_imaginary_part(s);
  return build_report(automorphism_sending_i_to(h), u, p0, {p0, p0 + u, p0 + v});
}

double AffinePlane::distance(const Quaternion& q) const {
  const double nu = u.norm();
  if (nu == 0.0) throw Error(ErrorCode::DegeneratePlane, "spanning vectors must be nonzero");
  const Quaternion e1 = u / nu;
  const Quaternion w = v - dot(v, e1) * e1;
  const double nw = w.norm();
  if (nw <= 1e-12 * v.norm()) {
    throw Error(ErrorCode::DegeneratePlane, "spanning vectors are linearly dependent");
  }
  const Quaternion e2 = w / nw;
  const Quaternion r = q - p0;
  return (r - dot(r, e1) * e1 - dot(r, e2) * e2).norm();
}

}  // namespace qpicard
