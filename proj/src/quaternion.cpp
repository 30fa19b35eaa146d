#include "qpicard/quaternion.hpp"

#include <algorithm>
#include <numbers>
#include <ostream>

#include "qpicard/errors.hpp"

namespace qpicard {

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw Error(ErrorCode::ZeroDivision, "inverse of the zero quaternion");
  return conj() / n2;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

ImaginaryUnit ImaginaryUnit::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n == 0.0) throw Error(ErrorCode::ZeroInput, "imaginary unit from the zero vector");
  return ImaginaryUnit(x / n, y / n, z / n);
}

ImaginaryUnit ImaginaryUnit::from_imaginary_part(const Quaternion& q) {
  return normalized(q.x, q.y, q.z);
}

ImaginaryUnit ImaginaryUnit::checked(const Quaternion& q, double tol) {
  if (!is_imaginary_unit(q, tol)) {
    throw Error(ErrorCode::InvalidArgument, "quaternion is not an imaginary unit");
  }
  return normalized(q.x, q.y, q.z);
}

bool is_imaginary_unit(const Quaternion& q, double tol) {
  return std::abs(q.w) <= tol && std::abs(q.norm() - 1.0) <= tol;
}

Automorphism::Automorphism(const Quaternion& a) {
  const double n = a.norm();
  if (n == 0.0) throw Error(ErrorCode::ZeroInput, "automorphism from the zero quaternion");
  rotor_ = a / n;
}

Automorphism Automorphism::inverse() const {
  Automorphism inv;
  inv.rotor_ = rotor_.conj();
  return inv;
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  Automorphism out;
  out.rotor_ = rotor_ * other.rotor_;
  return out;
}

ImaginaryUnit Automorphism::axis() const {
  if (rotor_.imag_norm() == 0.0) return ImaginaryUnit::i();
  return ImaginaryUnit::from_imaginary_part(rotor_);
}

double Automorphism::angle() const {
  const double half = std::atan2(rotor_.imag_norm(), rotor_.w);
  return 2.0 * half;
}

bool Automorphism::is_identity(double tol) const {
  // a and -a give the same map.
  return rotor_.imag_norm() <= tol;
}

Automorphism automorphism_sending_i_to(const ImaginaryUnit& h) {
  const double hx = h.x(), hy = h.y(), hz = h.z();
  // 1 + <I,h> computed without cancellation near h = -I.
  const double perp2 = hy * hy + hz * hz;
  const double scalar = hx >= 0.0 ? 1.0 + hx : perp2 / (1.0 - hx);
  const Quaternion rotor(scalar, 0.0, -hz, hy);
  if (rotor.norm2() == 0.0) return Automorphism(Quaternion::j());
  return Automorphism(rotor);
}

}  // namespace qpicard
