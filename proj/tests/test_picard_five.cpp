#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "qpicard/constructions.hpp"
#include "qpicard/errors.hpp"
#include "qpicard/picard_five.hpp"
#include "five_value_oracle.hpp"
#include "test_support.hpp"

using namespace qpicard;
using qpicard::testing::Sampler;
using Verdict = LaurentCertificate::Verdict;
using qpicard::testing::predict;
using qpicard::testing::Prediction;
using qpicard::testing::random_alpha;
using qpicard::testing::random_targets;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

const Quaternion kI{0, 1, 0, 0}, kJ{0, 0, 1, 0}, kK{0, 0, 0, 1};

Targets5 basis_targets() { return {Quaternion(1), kI, kJ, kK, Quaternion()}; }

CQuaternion random_z(Sampler& s, double scale = 1.0) { return s.cquaternion(scale); }

double cq_size(const CQuaternion& z) { return z.norm(); }

double distance(const CQuaternion& a, const CQuaternion& b) { return (a - b).norm(); }

// Laurent coefficients of psi(alpha z^m) by sampling the unit circle.
std::vector<Complex> sampled_laurent(const FiveValueProblem& prob, const std::array<double, 5>& alpha,
                                     const std::array<int, 5>& m, int lo, int hi) {
  const int n = 64;
  std::vector<Complex> values(n);
  for (int j = 0; j < n; ++j) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
    Complex5 v;
    for (int i = 0; i < 5; ++i) v[i] = alpha[i] * std::pow(z, m[i]);
    values[j] = psi(prob, v);
  }
  std::vector<Complex> out;
  for (int k = lo; k <= hi; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) acc += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / n);
    out.push_back(acc / static_cast<double>(n));
  }
  return out;
}

double coefficient(const LaurentCertificate& cert, int degree) {
  const auto it = cert.coefficients.find(degree);
  return it == cert.coefficients.end() ? 0.0 : it->second;
}

}  // namespace

TEST(GeneralPosition, AffineBasisAndDegenerateSets) {
  EXPECT_TRUE(general_position({Quaternion(), Quaternion(1), kI, kJ, kK}));
  EXPECT_FALSE(general_position({Quaternion(), Quaternion(1), kI, kJ, Quaternion(1, 1, 0, 0)}));
  EXPECT_FALSE(general_position({Quaternion(), Quaternion(), Quaternion(), Quaternion(), Quaternion()}));
}

TEST(GeneralPosition, RandomBallPointsAgreeWithRankOracle) {
  Sampler s(1);
  for (int t = 0; t < 200; ++t) {
    Targets5 c;
    for (auto& q : c) q = s.in_ball(1.0);
    Eigen::Matrix4d d;
    for (int i = 0; i < 4; ++i) {
      const Quaternion r = c[i] - c[4];
      d.row(i) << r.w, r.x, r.y, r.z;
    }
    EXPECT_EQ(general_position(c), Eigen::FullPivLU<Eigen::Matrix4d>(d).rank() == 4);
    EXPECT_TRUE(general_position(c));
  }
}

TEST(BuildProblem, StandardBasisGivesIdentity) {
  const FiveValueProblem p = build_problem(basis_targets());
  EXPECT_TRUE(p.b().isApprox(Eigen::Matrix4d::Identity(), 1e-15));
  EXPECT_TRUE(p.gram().isApprox(Eigen::Matrix4d::Identity(), 1e-15));
  EXPECT_NEAR(p.min_eigenvalue(), 1.0, 1e-14);
}

TEST(BuildProblem, ScaledBasis) {
  const FiveValueProblem p = build_problem({Quaternion(2), 2.0 * kI, 2.0 * kJ, 2.0 * kK, Quaternion()});
  EXPECT_TRUE(p.basis_inverse().isApprox(2.0 * Eigen::Matrix4d::Identity(), 1e-15));
  EXPECT_TRUE(p.b().isApprox(0.5 * Eigen::Matrix4d::Identity(), 1e-15));
  EXPECT_TRUE(p.gram().isApprox(0.25 * Eigen::Matrix4d::Identity(), 1e-15));
}

TEST(BuildProblem, TranslatesByFifthTarget) {
  Sampler s(2);
  const Targets5 c = random_targets(s);
  const FiveValueProblem p = build_problem(c);
  EXPECT_EQ(p.offset(), c[4]);
  for (int i = 0; i < 4; ++i) {
    const Quaternion t = c[i] - c[4];
    EXPECT_EQ(p.translated()[i], t);
    EXPECT_NEAR(p.target_norms2()[i], t.norm2(), 1e-14 * (1 + t.norm2()));
  }
}

TEST(BuildProblem, RejectsDegenerateTargets) {
  EXPECT_EQ(code_of([] {
              build_problem({Quaternion(), Quaternion(1), kI, kJ, Quaternion(1, 1, 0, 0)});
            }),
            ErrorCode::NotGeneralPosition);
}

TEST(BuildProblem, GramIsPositiveDefiniteAndReproducesNorm) {
  Sampler s(3);
  for (int t = 0; t < 50; ++t) {
    const FiveValueProblem p = build_problem(random_targets(s));
    EXPECT_GT(p.min_eigenvalue(), 0.0);
    EXPECT_EQ(Eigen::LLT<Eigen::Matrix4d>(p.gram()).info(), Eigen::Success);
    EXPECT_TRUE((p.basis_inverse() * p.b()).isApprox(Eigen::Matrix4d::Identity(), 1e-10));
    for (int k = 0; k < 20; ++k) {
      const Quaternion z = s.quaternion(3.0);
      Eigen::Vector4d v;
      for (int i = 0; i < 4; ++i) v[i] = dot(z, p.translated()[i]);
      EXPECT_NEAR(v.dot(p.gram() * v), z.norm2(), 1e-9 * (1 + z.norm2()));
    }
  }
}

TEST(Phi, AtZeroGivesTargetNorms) {
  Sampler s(4);
  const FiveValueProblem p = build_problem(random_targets(s));
  const Complex5 v = phi_map(p, CQuaternion());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(v[i] - p.target_norms2()[i]), 0.0, 1e-14);
  EXPECT_EQ(v[4], Complex(0.0));
}

TEST(Phi, ComponentsAreShiftedQuadraticForms) {
  Sampler s(5);
  for (int t = 0; t < 20; ++t) {
    const FiveValueProblem p = build_problem(random_targets(s));
    for (int k = 0; k < 50; ++k) {
      const CQuaternion z = random_z(s, 2.0);
      const Complex5 v = phi_map(p, z);
      const double scale = 1 + std::pow(cq_size(z) + 3, 2);
      for (int i = 0; i < 4; ++i) {
        const CQuaternion d = z - CQuaternion::real(p.translated()[i]);
        EXPECT_LE(std::abs(v[i] - quadratic_form(d)), 1e-13 * scale);
      }
      EXPECT_LE(std::abs(v[4] - quadratic_form(z)), 1e-13 * scale);
    }
  }
}

TEST(Phi, CommutesWithConjugation) {
  Sampler s(6);
  const FiveValueProblem p = build_problem(random_targets(s));
  for (int k = 0; k < 500; ++k) {
    const CQuaternion z = random_z(s, 2.0);
    const CQuaternion zbar = CQuaternion::from_pair(z.real_part(), -1.0 * z.imag_part());
    const Complex5 a = phi_map(p, zbar), b = phi_map(p, z);
    for (int i = 0; i < 5; ++i) EXPECT_LE(std::abs(a[i] - std::conj(b[i])), 1e-12 * (1 + std::abs(b[i])));
  }
}

TEST(Psi, VanishesOnImageOfRandomPoints) {
  Sampler s(7);
  for (int t = 0; t < 20; ++t) {
    const FiveValueProblem p = build_problem(random_targets(s));
    for (int k = 0; k < 100; ++k) {
      const CQuaternion z = random_z(s, s.uniform(0.1, 5.0));
      const double r = cq_size(z);
      EXPECT_LE(std::abs(psi(p, phi_map(p, z))), 1e-10 * (1 + std::pow(r, 4)));
    }
  }
}

TEST(Psi, VanishesOnImageOfGrid) {
  Sampler s(8);
  const FiveValueProblem p = build_problem(random_targets(s));
  const double nodes[4] = {-1.5, -0.5, 0.5, 1.5};
  for (double a : nodes)
    for (double b : nodes)
      for (double c : nodes)
        for (double d : nodes) {
          const CQuaternion z{Complex(a, b), Complex(b, c), Complex(c, d), Complex(d, a)};
          EXPECT_LE(std::abs(psi(p, phi_map(p, z))), 1e-10 * (1 + std::pow(cq_size(z), 4)));
        }
}

TEST(Psi, ReducesToLastCoordinateWhenUVanishes) {
  const FiveValueProblem p = build_problem(basis_targets());
  Sampler s(9);
  for (int k = 0; k < 20; ++k) {
    const Complex pv = s.complex(3.0);
    const Complex w = 1.0 + pv;
    EXPECT_LE(std::abs(psi(p, Complex4{w, w, w, w}, pv) - pv), 1e-15 * (1 + std::abs(pv)));
  }
}

TEST(Psi, NonzeroOffTheVariety) {
  Sampler s(10);
  const FiveValueProblem p = build_problem(random_targets(s));
  for (int k = 0; k < 100; ++k) {
    Complex5 v = phi_map(p, random_z(s));
    v[0] += 1.0;
    EXPECT_GT(std::abs(psi(p, v)), 1e-8);
  }
}

TEST(Mu, InvertsPhi) {
  Sampler s(11);
  for (int t = 0; t < 20; ++t) {
    const FiveValueProblem p = build_problem(random_targets(s));
    for (int k = 0; k < 100; ++k) {
      const CQuaternion z = random_z(s, 2.0);
      EXPECT_LE(distance(mu_inverse(p, phi_map(p, z)), z), 1e-9);
    }
  }
}

TEST(Mu, PhiInvertsMuOnTheVariety) {
  Sampler s(12);
  const FiveValueProblem p = build_problem(random_targets(s));
  for (int k = 0; k < 200; ++k) {
    const Complex5 v = phi_map(p, random_z(s, 2.0));
    const Complex5 back = phi_map(p, mu_inverse(p, v));
    for (int i = 0; i < 5; ++i) EXPECT_LE(std::abs(back[i] - v[i]), 1e-9 * (1 + std::abs(v[i])));
  }
}

TEST(Mu, ImageOfOriginIsZero) {
  Sampler s(13);
  const FiveValueProblem p = build_problem(random_targets(s));
  const auto& n = p.target_norms2();
  const CQuaternion z = mu_inverse(p, {n[0], n[1], n[2], n[3], 0.0});
  EXPECT_LE(z.norm(), 1e-13);
}

TEST(Monomial, FirstCaseLeadingCoefficient) {
  const FiveValueProblem p = build_problem(basis_targets());
  Sampler s(14);
  for (int k = 0; k < 20; ++k) {
    const auto alpha = random_alpha(s);
    for (bool exact : {false, true}) {
      const LaurentCertificate c = exact ? ExactQuadric(p).check(alpha, {-1, 0, 0, 0, 0})
                                         : monomial_curve_check(p, alpha, {-1, 0, 0, 0, 0});
      EXPECT_EQ(c.verdict, Verdict::NonVanishing);
      EXPECT_EQ(c.degree, -2);
      EXPECT_NEAR(c.value, -0.25 * alpha[0] * alpha[0], 1e-14);
      EXPECT_EQ(c.exact, exact);
    }
  }
}

TEST(Monomial, ConstantCurve) {
  const FiveValueProblem p = build_problem(basis_targets());
  EXPECT_EQ(monomial_curve_check(p, {1, 2, 3, 4, 5}, {0, 0, 0, 0, 0}).verdict, Verdict::ConstantCurve);
  EXPECT_EQ(ExactQuadric(p).check({1, 2, 3, 4, 5}, {0, 0, 0, 0, 0}).verdict, Verdict::ConstantCurve);
}

TEST(Monomial, RejectsZeroAlpha) {
  const FiveValueProblem p = build_problem(basis_targets());
  EXPECT_EQ(code_of([&] { monomial_curve_check(p, {1, 0, 1, 1, 1}, {1, 0, 0, 0, 0}); }),
            ErrorCode::InvalidAlpha);
  EXPECT_EQ(code_of([&] { ExactQuadric(p).check({1, 1, 1, 1, 0}, {1, 0, 0, 0, 0}); }),
            ErrorCode::InvalidAlpha);
}

TEST(Monomial, SecondCaseConstantTerm) {
  const FiveValueProblem p = build_problem(basis_targets());
  const ExactQuadric q(p);
  // u_i = -(alpha_i - 1)/2 for the unit-norm basis targets.
  const LaurentCertificate c = q.check({3, 1, 1, 1, 2}, {0, 0, 0, 0, 1});
  EXPECT_EQ(c.degree, 0);
  EXPECT_DOUBLE_EQ(c.value, -1.0);
}

TEST(Monomial, SecondCaseFallsThroughToTopDegree) {
  // alpha_i = <c_i, c_i> kills the constant term; the linear term p and
  // the degree 2 m_5 term -alpha_5^2 d^t M d / 4 survive.
  const FiveValueProblem p = build_problem(basis_targets());
  const LaurentCertificate c = ExactQuadric(p).check({1, 1, 1, 1, 3}, {0, 0, 0, 0, 1});
  EXPECT_EQ(c.verdict, Verdict::NonVanishing);
  EXPECT_EQ(coefficient(c, 0), 0.0);
  EXPECT_EQ(c.degree, 1);
  EXPECT_DOUBLE_EQ(c.value, 3.0);
  EXPECT_DOUBLE_EQ(coefficient(c, 2), -9.0);
}

TEST(Monomial, CoefficientsMatchCircleSampling) {
  Sampler s(15);
  for (int t = 0; t < 10; ++t) {
    const FiveValueProblem p = build_problem(random_targets(s));
    const ExactQuadric q(p);
    for (int k = 0; k < 50; ++k) {
      std::array<int, 5> m;
      for (int& e : m) e = s.integer(-3, 3);
      const auto alpha = random_alpha(s);
      const LaurentCertificate fl = monomial_curve_check(p, alpha, m);
      const LaurentCertificate ex = q.check(alpha, m);
      const auto sampled = sampled_laurent(p, alpha, m, -6, 6);
      for (int d = -6; d <= 6; ++d) {
        const Complex b = sampled[d + 6];
        const double tol = 1e-10 * (1 + std::abs(b));
        EXPECT_LE(std::abs(b.imag()), tol);
        EXPECT_NEAR(coefficient(fl, d), b.real(), tol);
        EXPECT_NEAR(coefficient(ex, d), b.real(), tol);
      }
    }
  }
}

TEST(Monomial, CasePredictionsMatch) {
  Sampler s(16);
  for (int t = 0; t < 5; ++t) {
    const FiveValueProblem p = build_problem(random_targets(s));
    const ExactQuadric q(p);
    for (int k = 0; k < 400; ++k) {
      std::array<int, 5> m;
      do {
        for (int& e : m) e = s.integer(-3, 3);
      } while (m == std::array<int, 5>{});
      const auto alpha = random_alpha(s);
      const Prediction pr = predict(p, alpha, m);
      const LaurentCertificate c = q.check(alpha, m);
      ASSERT_EQ(c.verdict, Verdict::NonVanishing);
      EXPECT_NEAR(coefficient(c, pr.degree), pr.value, 1e-10 * (1 + std::abs(pr.value)));
      EXPECT_NE(pr.value, 0.0);
    }
  }
}

TEST(Monomial, ExhaustiveSweepNeverVanishes) {
  Sampler s(17);
  for (int t = 0; t < 2; ++t) {
    const FiveValueProblem p = build_problem(random_targets(s));
    const ExactQuadric q(p);
    std::array<int, 5> m{};
    std::size_t checked = 0;
    for (int code = 0; code < 16807; ++code) {
      int r = code;
      for (int& e : m) {
        e = r % 7 - 3;
        r /= 7;
      }
      if (m == std::array<int, 5>{}) continue;
      const auto alpha = random_alpha(s);
      ASSERT_EQ(monomial_curve_check(p, alpha, m).verdict, Verdict::NonVanishing);
      ASSERT_EQ(q.check(alpha, m).verdict, Verdict::NonVanishing);
      ++checked;
    }
    EXPECT_EQ(checked, 16806u);
  }
}

TEST(Monomial, ExactAgreesWithFloating) {
  Sampler s(18);
  const FiveValueProblem p = build_problem(random_targets(s));
  const ExactQuadric q(p);
  EXPECT_TRUE(q.gram().isApprox(p.gram(), 1e-12));
  for (int k = 0; k < 300; ++k) {
    std::array<int, 5> m;
    for (int& e : m) e = s.integer(-3, 3);
    const auto alpha = random_alpha(s);
    const LaurentCertificate a = monomial_curve_check(p, alpha, m);
    const LaurentCertificate b = q.check(alpha, m);
    EXPECT_EQ(a.verdict, b.verdict);
    if (a.verdict == Verdict::NonVanishing) {
      EXPECT_EQ(a.degree, b.degree);
      EXPECT_NEAR(a.value, b.value, 1e-10 * (1 + std::abs(b.value)));
    }
  }
}

TEST(Monomial, InversionMirrorsDegrees) {
  Sampler s(19);
  const FiveValueProblem p = build_problem(random_targets(s));
  const ExactQuadric q(p);
  for (int k = 0; k < 100; ++k) {
    std::array<int, 5> m, neg;
    for (int i = 0; i < 5; ++i) {
      m[i] = s.integer(-3, 3);
      neg[i] = -m[i];
    }
    const auto alpha = random_alpha(s);
    const LaurentCertificate a = q.check(alpha, m), b = q.check(alpha, neg);
    for (const auto& [d, v] : a.coefficients) EXPECT_EQ(coefficient(b, -d), v);
  }
}

TEST(Harness, TrigExampleStaysInVariety) {
  const FiveValueProblem p = build_problem(basis_targets());
  const FiveValueHarnessReport r = five_value_harness(p, trig_example(), {-4, 4, 0, 3}, 41);
  EXPECT_EQ(r.points, 41u * 41u);
  EXPECT_TRUE(r.stays_in_variety);
  EXPECT_LE(r.max_scaled_residual, 1e-8);
  // qq(F) = sin^2 + cos^2 = 1, so the fifth component never vanishes.
  EXPECT_EQ(r.components[4].vanishing_count, 0u);
  EXPECT_NEAR(r.components[4].min_abs, 1.0, 1e-9);
  EXPECT_FALSE(r.components[4].identically_zero);
}

TEST(Harness, FifthComponentTracksTheFifthTarget) {
  // With c_5 = K the fifth component is qq(F - K), which vanishes at z = 0.
  const FiveValueProblem p = build_problem({Quaternion(), Quaternion(1), kI, kJ, kK});
  const FiveValueHarnessReport r = five_value_harness(p, trig_example(), {-1, 1, 0, 1}, 41);
  EXPECT_TRUE(r.stays_in_variety);
  ASSERT_GT(r.components[4].vanishing_count, 0u);
  EXPECT_NEAR(std::abs(r.components[4].vanishing_points.front()), 0.0, 1e-12);
}

TEST(Harness, ConstantFunctionFlagsItsComponent) {
  Sampler s(20);
  const Targets5 c = random_targets(s);
  const FiveValueProblem p = build_problem(c);
  const FiveValueHarnessReport r =
      five_value_harness(p, SliceFunction::polynomial({c[0]}), {-2, 2, 0, 2}, 11);
  EXPECT_TRUE(r.components[0].identically_zero);
  for (int i = 1; i < 5; ++i) EXPECT_EQ(r.components[i].vanishing_count, 0u);
}

TEST(Harness, VanishingMatchesAttainment) {
  // f(q) = q attains every value; component i vanishes exactly over the
  // sphere of c_i, i.e. at z = Re c_i + i |Im c_i|.
  Targets5 c;
  c[0] = Quaternion(0.5, 0.0, 0.75, 0.0);
  c[1] = Quaternion(-0.25, 0.0, 0.0, 0.5);
  c[2] = Quaternion(1.0, 0.25, 0.0, 0.0);
  c[3] = Quaternion(0.0, 0.0, 0.0, 1.0);
  c[4] = Quaternion(1.0, 0.0, 0.0, 0.5);
  const FiveValueProblem p = build_problem(c);
  const SliceFunction f = SliceFunction::polynomial({Quaternion(), Quaternion(1)});
  const FiveValueHarnessReport r = five_value_harness(p, f, {-2, 2, 0, 2}, 17);
  for (int i = 0; i < 5; ++i) {
    const Complex expect(c[i].w, c[i].imag_norm());
    ASSERT_EQ(r.components[i].vanishing_count, 1u) << i;
    EXPECT_NEAR(std::abs(r.components[i].vanishing_points[0] - expect), 0.0, 1e-12);
  }
}

TEST(Harness, ResidualBoundForRandomPolynomials) {
  Sampler s(22);
  for (int t = 0; t < 10; ++t) {
    std::vector<Quaternion> coeffs(s.integer(1, 5));
    for (auto& a : coeffs) a = s.quaternion();
    const FiveValueProblem p = build_problem(random_targets(s));
    const FiveValueHarnessReport r =
        five_value_harness(p, SliceFunction::polynomial(coeffs), {-2, 2, 0, 2}, 21);
    EXPECT_TRUE(r.stays_in_variety);
  }
}
