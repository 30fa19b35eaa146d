#include "qpicard/cquaternion.hpp"

#include <cmath>
#include <ostream>

#include "qpicard/errors.hpp"

namespace qpicard {

double CQuaternion::norm2() const {
  double s = 0.0;
  for (const auto& c : v_) s += std::norm(c);
  return s;
}

double CQuaternion::norm() const { return std::sqrt(norm2()); }

CQuaternion& CQuaternion::operator+=(const CQuaternion& o) {
  for (std::size_t i = 0; i < 4; ++i) v_[i] += o.v_[i];
  return *this;
}

CQuaternion& CQuaternion::operator-=(const CQuaternion& o) {
  for (std::size_t i = 0; i < 4; ++i) v_[i] -= o.v_[i];
  return *this;
}

CQuaternion& CQuaternion::operator*=(Complex s) {
  for (auto& c : v_) c *= s;
  return *this;
}

CQuaternion cq_mul(const CQuaternion& a, const CQuaternion& b) {
  const Quaternion ap = a.real_part(), app = a.imag_part();
  const Quaternion bp = b.real_part(), bpp = b.imag_part();
  return CQuaternion::from_pair(ap * bp - app * bpp, ap * bpp + app * bp);
}

Complex bilinear(const CQuaternion& v, const CQuaternion& w) {
  return v[0] * w[0] + v[1] * w[1] + v[2] * w[2] + v[3] * w[3];
}

CQuaternion cq_conj(const CQuaternion& v) {
  return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2]), std::conj(v[3])};
}

bool is_zero_divisor(const CQuaternion& v, double tol) {
  return std::abs(quadratic_form(v)) <= tol * (1.0 + v.norm2());
}

ZeroDivisorWitness zero_divisor_witness(const CQuaternion& v, double tol, double unit_tol) {
  if (v.norm2() == 0.0) throw Error(ErrorCode::ZeroInput, "zero element has no witness");
  if (!is_zero_divisor(v, tol)) {
    throw Error(ErrorCode::NotAZeroDivisor, "<v,v> does not vanish");
  }
  const Quaternion vp = v.real_part();
  const Quaternion vpp = v.imag_part();
  if (vp.norm2() == 0.0) throw Error(ErrorCode::NotAZeroDivisor, "v' vanishes but v'' does not");
  const Quaternion h = vpp * vp.inverse();
  const Quaternion h2 = h * h;
  if ((h2 + Quaternion::one()).norm() > unit_tol) {
    throw Error(ErrorCode::NotAZeroDivisor, "v''(v')^{-1} is not an imaginary unit");
  }
  const ImaginaryUnit unit = ImaginaryUnit::from_imaginary_part(h);
  const CQuaternion w = CQuaternion::from_pair(Quaternion::one(), -unit.quaternion());
  return {unit, w};
}

std::ostream& operator<<(std::ostream& os, const CQuaternion& v) {
  return os << '[' << v[0] << ", " << v[1] << ", " << v[2] << ", " << v[3] << ']';
}

}  // namespace qpicard
