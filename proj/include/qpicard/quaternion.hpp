#pragma once

#include <cmath>
#include <iosfwd>

namespace qpicard {

inline constexpr double kDefaultTol = 1e-12;

/// q = w + x I + y J + z K.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double real() const { return w; }
  constexpr Quaternion imag() const { return {0.0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

  /// Throws Error(ZeroDivision) for q = 0.
  Quaternion inverse() const;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product; I J = K, J K = I, K I = J.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

inline Quaternion qmul(const Quaternion& p, const Quaternion& q) { return p * q; }
inline Quaternion qinv(const Quaternion& q) { return q.inverse(); }

/// Euclidean inner product on H = R^4.
constexpr double dot(const Quaternion& p, const Quaternion& q) {
  return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

inline double distance(const Quaternion& p, const Quaternion& q) { return (p - q).norm(); }

inline bool approx_equal(const Quaternion& p, const Quaternion& q, double tol = kDefaultTol) {
  return distance(p, q) <= tol;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// Element of the unit sphere S of imaginary units, H^2 = -1.
class ImaginaryUnit {
 public:
  /// Defaults to I.
  constexpr ImaginaryUnit() = default;

  static constexpr ImaginaryUnit i() { return ImaginaryUnit(1.0, 0.0, 0.0); }
  static constexpr ImaginaryUnit j() { return ImaginaryUnit(0.0, 1.0, 0.0); }
  static constexpr ImaginaryUnit k() { return ImaginaryUnit(0.0, 0.0, 1.0); }

  /// Direction of (x, y, z); throws Error(ZeroInput) for the zero vector.
  static ImaginaryUnit normalized(double x, double y, double z);
  /// Direction of the imaginary part of q; throws Error(ZeroInput) if q is real.
  static ImaginaryUnit from_imaginary_part(const Quaternion& q);
  /// Accepts q only if |Re q| <= tol and | |q| - 1 | <= tol, then renormalizes.
  /// Throws Error(InvalidArgument) otherwise.
  static ImaginaryUnit checked(const Quaternion& q, double tol = kDefaultTol);

  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }
  constexpr double z() const { return z_; }
  constexpr Quaternion quaternion() const { return {0.0, x_, y_, z_}; }
  constexpr operator Quaternion() const { return quaternion(); }
  constexpr ImaginaryUnit operator-() const { return ImaginaryUnit(-x_, -y_, -z_); }

 private:
  constexpr ImaginaryUnit(double x, double y, double z) : x_(x), y_(y), z_(z) {}

  double x_ = 1.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

/// True if q^2 = -1 within tol.
bool is_imaginary_unit(const Quaternion& q, double tol = kDefaultTol);

/// x + y H.
inline Quaternion slice_point(double x, double y, const ImaginaryUnit& h) {
  return Quaternion(x) + y * h.quaternion();
}

/// Ring automorphism q -> a q a^{-1} for a unit quaternion a.
///
/// Every orientation preserving orthogonal map of H fixing R has this form.
/// Such maps fix R pointwise, preserve norms and inner products, and are
/// multiplicative.
class Automorphism {
 public:
  Automorphism() = default;
  /// Normalizes a; throws Error(ZeroInput) for a = 0.
  explicit Automorphism(const Quaternion& a);

  static Automorphism identity() { return Automorphism(); }

  Quaternion apply(const Quaternion& q) const { return rotor_ * q * rotor_.conj(); }
  Quaternion operator()(const Quaternion& q) const { return apply(q); }
  Automorphism inverse() const;
  /// (this o other)(q) = this(other(q)).
  Automorphism compose(const Automorphism& other) const;

  const Quaternion& rotor() const { return rotor_; }
  /// Rotation axis in the imaginary 3-space; I for the identity.
  ImaginaryUnit axis() const;
  /// Rotation angle in [0, 2 pi).
  double angle() const;
  bool is_identity(double tol = kDefaultTol) const;

 private:
  Quaternion rotor_ = Quaternion::one();
};

/// Smallest rotation carrying I to h (rotor proportional to 1 + <I,h> + I x h).
/// For h = -I, whose rotation axis is undetermined, conjugation by J.
Automorphism automorphism_sending_i_to(const ImaginaryUnit& h);

}  // namespace qpicard
