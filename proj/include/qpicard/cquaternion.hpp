#pragma once

#include <array>
#include <complex>
#include <iosfwd>

#include "qpicard/quaternion.hpp"

namespace qpicard {

using Complex = std::complex<double>;

/// Element of H (x) C.
///
/// Stored as complex coordinates v = 1(x)v0 + I(x)v1 + J(x)v2 + K(x)v3. The
/// equivalent pair form v = v'(x)1 + v''(x)i collects the real parts into v'
/// and the imaginary parts into v''.
class CQuaternion {
 public:
  constexpr CQuaternion() = default;
  constexpr CQuaternion(Complex v0, Complex v1, Complex v2, Complex v3) : v_{v0, v1, v2, v3} {}
  explicit constexpr CQuaternion(const std::array<Complex, 4>& v) : v_(v) {}

  /// q (x) 1.
  static constexpr CQuaternion real(const Quaternion& q) { return from_pair(q, Quaternion()); }
  /// v'(x)1 + v''(x)i.
  static constexpr CQuaternion from_pair(const Quaternion& vp, const Quaternion& vpp) {
    return {Complex(vp.w, vpp.w), Complex(vp.x, vpp.x), Complex(vp.y, vpp.y),
            Complex(vp.z, vpp.z)};
  }
  /// q (x) s.
  static constexpr CQuaternion tensor(const Quaternion& q, Complex s) {
    return {q.w * s, q.x * s, q.y * s, q.z * s};
  }

  constexpr Quaternion real_part() const {
    return {v_[0].real(), v_[1].real(), v_[2].real(), v_[3].real()};
  }
  constexpr Quaternion imag_part() const {
    return {v_[0].imag(), v_[1].imag(), v_[2].imag(), v_[3].imag()};
  }

  constexpr const Complex& operator[](std::size_t i) const { return v_[i]; }
  constexpr Complex& operator[](std::size_t i) { return v_[i]; }
  constexpr const std::array<Complex, 4>& coords() const { return v_; }

  /// sum |v_i|^2 (Hermitian, used only for scales and distances).
  double norm2() const;
  double norm() const;

  CQuaternion& operator+=(const CQuaternion& o);
  CQuaternion& operator-=(const CQuaternion& o);
  CQuaternion& operator*=(Complex s);

  friend bool operator==(const CQuaternion&, const CQuaternion&) = default;

 private:
  std::array<Complex, 4> v_{};
};

inline CQuaternion operator+(CQuaternion a, const CQuaternion& b) { return a += b; }
inline CQuaternion operator-(CQuaternion a, const CQuaternion& b) { return a -= b; }
inline CQuaternion operator*(CQuaternion a, Complex s) { return a *= s; }
inline CQuaternion operator*(Complex s, CQuaternion a) { return a *= s; }
inline CQuaternion operator-(const CQuaternion& a) { return a * Complex(-1.0); }

/// (a' + a'' i)(b' + b'' i) = (a'b' - a''b'') + (a'b'' + a''b') i.
CQuaternion cq_mul(const CQuaternion& a, const CQuaternion& b);
inline CQuaternion operator*(const CQuaternion& a, const CQuaternion& b) { return cq_mul(a, b); }

/// Complex bilinear (not Hermitian) extension of the euclidean product.
Complex bilinear(const CQuaternion& v, const CQuaternion& w);

/// <v, v> = sum v_i^2; vanishes exactly on the zero divisors.
inline Complex quadratic_form(const CQuaternion& v) { return bilinear(v, v); }

/// Conjugation of the C factor: v' + v'' i -> v' - v'' i.
CQuaternion cq_conj(const CQuaternion& v);

inline constexpr double kZeroDivisorTol = 1e-10;

/// |<v,v>| <= tol (1 + |v|^2).
bool is_zero_divisor(const CQuaternion& v, double tol = kZeroDivisorTol);

struct ZeroDivisorWitness {
  ImaginaryUnit h;          // H v' = v''
  CQuaternion annihilator;  // 1(x)1 - H(x)i, a left annihilator of v
};

/// H = v''(v')^{-1} together with the left annihilator 1(x)1 - H(x)i.
///
/// Throws Error(ZeroInput) for v = 0 and Error(NotAZeroDivisor) if v fails the
/// quadric test or the recovered H misses S by more than unit_tol.
ZeroDivisorWitness zero_divisor_witness(const CQuaternion& v, double tol = kZeroDivisorTol,
                                        double unit_tol = 1e-9);

std::ostream& operator<<(std::ostream& os, const CQuaternion& v);

}  // namespace qpicard
