#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>

#include "qpicard/picard_five.hpp"
#include "test_support.hpp"

namespace qpicard::testing {

inline Targets5 random_targets(Sampler& s) {
  for (;;) {
    Targets5 c;
    for (auto& q : c) q = s.in_box(2.0);
    if (general_position(c, 1e-3)) return c;
  }
}

inline std::array<double, 5> random_alpha(Sampler& s) {
  std::array<double, 5> a{};
  for (auto& x : a) x = (s.integer(0, 1) ? 1.0 : -1.0) * s.uniform(0.5, 2.0);
  return a;
}

struct Prediction {
  int degree;
  double value;
};

// One Laurent coefficient of psi(alpha_1 z^m_1, ..., alpha_5 z^m_5) that the
// three-case analysis says is nonzero, computed straight from M. The curve
// is first normalised to m_5 >= 0; inverting z mirrors the degrees.
//   m_min < 0:         degree 2 m_min, u_i = alpha_i where m_i = m_min
//   m_5 > 0, m_i >= 0: degree 0, u_i = [m_i = 0] alpha_i - <c_i, c_i>,
//                      or degree 2 m_5 with u = alpha_5 (1,1,1,1) if that u is 0
//   m_5 = 0, m_i >= 0: degree 2 m_max, u_i = alpha_i where m_i = m_max
// and the coefficient is -u^t M u / 4.
inline Prediction predict(const FiveValueProblem& prob, const std::array<double, 5>& alpha,
                          std::array<int, 5> m) {
  int sign = 1;
  if (m[4] < 0) {
    for (int& e : m) e = -e;
    sign = -1;
  }
  const Eigen::Matrix4d& g = prob.gram();
  const auto& n = prob.target_norms2();
  auto quad = [&g](const Eigen::Vector4d& u) { return -0.25 * u.dot(g * u); };
  const int m_min = *std::min_element(m.begin(), m.begin() + 4);
  const int m_max = *std::max_element(m.begin(), m.begin() + 4);
  Eigen::Vector4d u = Eigen::Vector4d::Zero();
  if (m_min < 0) {
    for (int i = 0; i < 4; ++i) u[i] = m[i] == m_min ? alpha[i] : 0.0;
    return {sign * 2 * m_min, quad(u)};
  }
  if (m[4] > 0) {
    for (int i = 0; i < 4; ++i) u[i] = (m[i] == 0 ? alpha[i] : 0.0) - n[i];
    if (u.norm() > 0.0) return {0, quad(u)};
    return {sign * 2 * m[4], quad(alpha[4] * Eigen::Vector4d::Ones())};
  }
  for (int i = 0; i < 4; ++i) u[i] = m[i] == m_max ? alpha[i] : 0.0;
  return {sign * 2 * m_max, quad(u)};
}

}  // namespace qpicard::testing
