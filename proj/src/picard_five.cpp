#include "qpicard/picard_five.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "qpicard/errors.hpp"

namespace qpicard {

namespace {

Eigen::Vector4d as_vector(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

Eigen::Matrix4d difference_matrix(const Targets5& c) {
  Eigen::Matrix4d rows;
  for (int i = 0; i < 4; ++i) rows.row(i) = as_vector(c[i] - c[4]).transpose();
  return rows;
}

Complex bilinear_real(const CQuaternion& z, const Quaternion& c) {
  return z[0] * c.w + z[1] * c.x + z[2] * c.y + z[3] * c.z;
}

void require_alpha(const std::array<double, 5>& alpha) {
  for (double a : alpha) {
    if (a == 0.0 || !std::isfinite(a)) {
      throw Error(ErrorCode::InvalidAlpha, "alpha entries must be finite and nonzero");
    }
  }
}

// psi o zeta with u_i = -(alpha_i z^m_i - alpha_5 z^m_5 - n_i)/2, expanded
// term by term. `Acc` receives (degree, contribution) pairs.
template <class Scalar, class Acc>
void expand_laurent(const std::array<std::array<Scalar, 4>, 4>& gram,
                    const std::array<Scalar, 4>& norms2, const std::array<Scalar, 5>& alpha,
                    const std::array<int, 5>& m, Acc&& acc) {
  struct Term {
    Scalar coef;
    int degree;
  };
  const Scalar half(Scalar(1) / Scalar(2));
  std::array<std::array<Term, 3>, 4> u;
  for (std::size_t i = 0; i < 4; ++i) {
    u[i] = {Term{-half * alpha[i], m[i]}, Term{half * alpha[4], m[4]},
            Term{half * norms2[i], 0}};
  }
  acc(m[4], Scalar(alpha[4]));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      for (const Term& a : u[i]) {
        for (const Term& b : u[j]) {
          acc(a.degree + b.degree, Scalar(-(gram[i][j] * a.coef * b.coef)));
        }
      }
    }
  }
}

bool is_constant_curve(const std::array<int, 5>& m) {
  return std::all_of(m.begin(), m.end(), [](int d) { return d == 0; });
}

}  // namespace

bool general_position(const Targets5& c, double rel_tol) {
  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(difference_matrix(c));
  const auto& sigma = svd.singularValues();
  if (sigma(0) == 0.0) return false;
  return sigma(3) > rel_tol * sigma(0);
}

FiveValueProblem build_problem(const Targets5& c) {
  if (!general_position(c)) {
    throw Error(ErrorCode::NotGeneralPosition, "the five targets lie in an affine 3-space");
  }
  FiveValueProblem prob;
  prob.targets_ = c;
  for (std::size_t i = 0; i < 4; ++i) {
    prob.translated_[i] = c[i] - c[4];
    prob.norms2_[i] = prob.translated_[i].norm2();
  }
  prob.basis_inverse_ = difference_matrix(c);
  const Eigen::FullPivLU<Eigen::Matrix4d> lu(prob.basis_inverse_);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularBasis, "target differences are singular");
  prob.b_ = lu.inverse();
  prob.gram_ = prob.b_.transpose() * prob.b_;
  const Eigen::LLT<Eigen::Matrix4d> llt(prob.gram_);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularBasis, "Gram matrix failed the Cholesky test");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(prob.gram_, Eigen::EigenvaluesOnly);
  prob.min_eigenvalue_ = eig.eigenvalues().minCoeff();
  if (!(prob.min_eigenvalue_ > 0.0)) {
    throw Error(ErrorCode::SingularBasis, "Gram matrix is not positive definite");
  }
  return prob;
}

Complex5 phi_map(const FiveValueProblem& prob, const CQuaternion& z) {
  const Complex zz = quadratic_form(z);
  Complex5 out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = zz - 2.0 * bilinear_real(z, prob.translated()[i]) + prob.target_norms2()[i];
  }
  out[4] = zz;
  return out;
}

Complex psi(const FiveValueProblem& prob, const Complex4& w, Complex p) {
  Eigen::Vector4cd u;
  for (int i = 0; i < 4; ++i) u(i) = -0.5 * (w[i] - p - prob.target_norms2()[i]);
  // Plain transpose: the form is bilinear, not Hermitian.
  const Complex utmu = (u.transpose() * prob.gram().cast<Complex>() * u)(0, 0);
  return p - utmu;
}

CQuaternion mu_inverse(const FiveValueProblem& prob, const Complex5& v) {
  Eigen::Vector4cd coords;
  for (int i = 0; i < 4; ++i) coords(i) = -0.5 * (v[i] - prob.target_norms2()[i] - v[4]);
  const Eigen::Vector4cd z = prob.b().cast<Complex>() * coords;
  return {z(0), z(1), z(2), z(3)};
}

LaurentCertificate monomial_curve_check(const FiveValueProblem& prob,
                                        const std::array<double, 5>& alpha,
                                        const std::array<int, 5>& m) {
  require_alpha(alpha);
  std::array<std::array<double, 4>, 4> gram;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) gram[i][j] = prob.gram()(i, j);
  }
  std::map<int, double> coefficients;
  double magnitude = 0.0;
  std::map<int, double> term_magnitude;
  expand_laurent<double>(gram, prob.target_norms2(), alpha, m, [&](int degree, double value) {
    coefficients[degree] += value;
    term_magnitude[degree] += std::abs(value);
  });
  for (const auto& [degree, mag] : term_magnitude) magnitude = std::max(magnitude, mag);

  LaurentCertificate cert;
  cert.m = m;
  cert.alpha = alpha;
  cert.coefficients = std::move(coefficients);
  cert.exact = false;
  const double threshold = 1e-12 * magnitude;
  if (is_constant_curve(m)) {
    cert.verdict = LaurentCertificate::Verdict::ConstantCurve;
    cert.value = cert.coefficients.begin()->second;
    return cert;
  }
  cert.verdict = LaurentCertificate::Verdict::AllZero;
  for (const auto& [degree, value] : cert.coefficients) {
    if (std::abs(value) > threshold) {
      cert.verdict = LaurentCertificate::Verdict::NonVanishing;
      cert.degree = degree;
      cert.value = value;
      break;
    }
  }
  return cert;
}

struct ExactQuadric::Impl {
  std::array<std::array<mpq_class, 4>, 4> gram;
  std::array<mpq_class, 4> norms2;
  // gram = gram_num / gram_den with integer entries.
  std::array<std::array<mpz_class, 4>, 4> gram_num;
  mpz_class gram_den;
};

ExactQuadric::ExactQuadric(const FiveValueProblem& prob) : impl_(std::make_unique<Impl>()) {
  const auto& c = prob.targets();
  auto component = [](const Quaternion& q, int k) {
    return mpq_class(k == 0 ? q.w : k == 1 ? q.x : k == 2 ? q.y : q.z);
  };
  // Augmented [B^{-1} | I], reduced to [I | B] by Gauss-Jordan.
  std::array<std::array<mpq_class, 8>, 4> a;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      a[i][k] = component(c[i], k) - component(c[4], k);
      a[i][k + 4] = (i == k) ? 1 : 0;
    }
    impl_->norms2[i] = 0;
    for (int k = 0; k < 4; ++k) impl_->norms2[i] += a[i][k] * a[i][k];
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    while (pivot < 4 && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == 4) throw Error(ErrorCode::SingularBasis, "target differences are singular");
    std::swap(a[col], a[pivot]);
    const mpq_class inv = 1 / a[col][col];
    for (auto& e : a[col]) e *= inv;
    for (int r = 0; r < 4; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const mpq_class factor = a[r][col];
      for (int k = 0; k < 8; ++k) a[r][k] -= factor * a[col][k];
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      mpq_class s = 0;
      for (int k = 0; k < 4; ++k) s += a[k][i + 4] * a[k][j + 4];
      impl_->gram[i][j] = s;
    }
  }
  impl_->gram_den = 1;
  for (const auto& row : impl_->gram) {
    for (const auto& e : row) mpz_lcm(impl_->gram_den.get_mpz_t(), impl_->gram_den.get_mpz_t(),
                                      e.get_den_mpz_t());
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      impl_->gram_num[i][j] = impl_->gram[i][j].get_num() * (impl_->gram_den / impl_->gram[i][j].get_den());
    }
  }
}

ExactQuadric::~ExactQuadric() = default;
ExactQuadric::ExactQuadric(ExactQuadric&&) noexcept = default;
ExactQuadric& ExactQuadric::operator=(ExactQuadric&&) noexcept = default;

Eigen::Matrix4d ExactQuadric::gram() const {
  Eigen::Matrix4d out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(i, j) = impl_->gram[i][j].get_d();
  }
  return out;
}

LaurentCertificate ExactQuadric::check(const std::array<double, 5>& alpha,
                                       const std::array<int, 5>& m) const {
  require_alpha(alpha);
  std::array<mpq_class, 5> exact_alpha;
  for (std::size_t i = 0; i < 5; ++i) exact_alpha[i] = mpq_class(alpha[i]);
  // Same expansion as expand_laurent, with u grouped by degree first so each
  // pair of degrees costs one quadratic form. Everything is scaled to
  // integers: u = U / scale and M = N / gram_den.
  std::array<mpq_class, 5> half_alpha;
  for (int i = 0; i < 5; ++i) half_alpha[i] = exact_alpha[i] / 2;
  std::array<mpq_class, 4> half_norms;
  for (int i = 0; i < 4; ++i) half_norms[i] = impl_->norms2[i] / 2;
  mpz_class scale = 1;
  auto absorb = [&scale](const mpq_class& q) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
  };
  for (const auto& q : half_alpha) absorb(q);
  for (const auto& q : half_norms) absorb(q);
  auto scaled = [&scale](const mpq_class& q) -> mpz_class {
    return q.get_num() * (scale / q.get_den());
  };
  std::map<int, std::array<mpz_class, 4>> u;
  for (int i = 0; i < 4; ++i) {
    u[m[i]][i] -= scaled(half_alpha[i]);
    u[m[4]][i] += scaled(half_alpha[4]);
    u[0][i] += scaled(half_norms[i]);
  }
  const mpz_class den = impl_->gram_den * scale * scale;
  std::map<int, mpz_class> numerators;
  numerators[m[4]] += 2 * scaled(half_alpha[4]) * scale * impl_->gram_den;
  mpz_class t;
  for (const auto& [d2, v] : u) {
    std::array<mpz_class, 4> mv;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        mpz_mul(t.get_mpz_t(), impl_->gram_num[i][j].get_mpz_t(), v[j].get_mpz_t());
        mv[i] += t;
      }
    }
    for (const auto& [d1, w] : u) {
      mpz_class& acc = numerators[d1 + d2];
      for (int i = 0; i < 4; ++i) mpz_submul(acc.get_mpz_t(), w[i].get_mpz_t(), mv[i].get_mpz_t());
    }
  }
  std::map<int, mpq_class> coefficients;
  for (const auto& [degree, num] : numerators) {
    mpq_class q(num, den);
    q.canonicalize();
    coefficients.emplace(degree, std::move(q));
  }

  LaurentCertificate cert;
  cert.m = m;
  cert.alpha = alpha;
  cert.exact = true;
  for (const auto& [degree, value] : coefficients) cert.coefficients[degree] = value.get_d();
  if (is_constant_curve(m)) {
    cert.verdict = LaurentCertificate::Verdict::ConstantCurve;
    cert.value = cert.coefficients.begin()->second;
    return cert;
  }
  cert.verdict = LaurentCertificate::Verdict::AllZero;
  for (const auto& [degree, value] : coefficients) {
    if (sgn(value) != 0) {
      cert.verdict = LaurentCertificate::Verdict::NonVanishing;
      cert.degree = degree;
      cert.value = value.get_d();
      break;
    }
  }
  return cert;
}

FiveValueHarnessReport five_value_harness(const FiveValueProblem& prob, const SliceFunction& f,
                                          const SearchRect& rect, std::size_t grid_n,
                                          double residual_tol, double vanish_tol) {
  if (grid_n < 2) throw Error(ErrorCode::InvalidArgument, "harness grid needs grid_n >= 2");
  constexpr std::size_t kMaxRecordedPoints = 16;
  FiveValueHarnessReport report;
  for (auto& comp : report.components) comp.min_abs = std::numeric_limits<double>::infinity();
  const CQuaternion shift = CQuaternion::real(prob.offset());
  for (std::size_t j = 0; j < grid_n; ++j) {
    const double y =
        rect.y_min + (rect.y_max - rect.y_min) * static_cast<double>(j) / (grid_n - 1.0);
    for (std::size_t i = 0; i < grid_n; ++i) {
      const double x =
          rect.x_min + (rect.x_max - rect.x_min) * static_cast<double>(i) / (grid_n - 1.0);
      const Complex z(x, y);
      const CQuaternion stem = stem_eval(f, z) - shift;
      const Complex5 g = phi_map(prob, stem);
      const double f2 = stem.norm2();
      report.max_scaled_residual =
          std::max(report.max_scaled_residual, std::abs(psi(prob, g)) / (1.0 + f2 * f2));
      for (std::size_t k = 0; k < 5; ++k) {
        auto& comp = report.components[k];
        const double mag = std::abs(g[k]);
        comp.min_abs = std::min(comp.min_abs, mag);
        const double c2 = k < 4 ? prob.target_norms2()[k] : 0.0;
        if (mag <= vanish_tol * (1.0 + f2 + c2)) {
          ++comp.vanishing_count;
          if (comp.vanishing_points.size() < kMaxRecordedPoints) comp.vanishing_points.push_back(z);
        }
      }
      ++report.points;
    }
  }
  report.stays_in_variety = report.max_scaled_residual <= residual_tol;
  for (auto& comp : report.components) comp.identically_zero = comp.vanishing_count == report.points;
  return report;
}

}  // namespace qpicard
