#pragma once

// Independent reference implementations built directly from the
// definitions with Eigen. Nothing here calls into msx.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat weyl(int n, int m, int d) {
  Mat u = Mat::Zero(d, d);
  const double w = 2.0 * std::numbers::pi / d;
  for (int k = 0; k < d; ++k) u(k, (k + m) % d) = std::polar(1.0, w * k * n);
  return u;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat bell(int n, int m) {
  Vec phi = Vec::Zero(9);
  for (int k = 0; k < 3; ++k) phi(k * 3 + k) = 1.0 / std::sqrt(3.0);
  const Vec v = kron(weyl(n, m, 3), Mat::Identity(3, 3)) * phi;
  return v * v.adjoint();
}

/// rho(a,b,g) straight from its definition.
inline Mat family(double a, double b, double g) {
  Mat rho = (1.0 - a - b - g) / 9.0 * Mat::Identity(9, 9);
  rho += a * bell(0, 0);
  rho += b / 2.0 * (bell(1, 0) + bell(2, 0));
  rho += g / 3.0 * (bell(0, 1) + bell(1, 1) + bell(2, 1));
  return rho;
}

inline Mat partial_transpose(const Mat& m) {
  Mat out(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) out(i * 3 + j, k * 3 + l) = m(i * 3 + l, k * 3 + j);
  return out;
}

inline Eigen::VectorXd eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double min_eig(const Mat& m) { return eigenvalues(m).minCoeff(); }

inline double pt_min(double a, double b, double g) { return min_eig(partial_transpose(family(a, b, g))); }

/// t_nm = Tr[(U_nm (x) U_{-n,m})^dag C] / 9, index n*3+m.
inline std::array<cd, 9> weyl_coefficients(const Mat& c) {
  std::array<cd, 9> t{};
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) {
      const Mat e = kron(weyl(n, m, 3), weyl((3 - n) % 3, m, 3));
      t[n * 3 + m] = (e.adjoint() * c).trace() / 9.0;
    }
  return t;
}

inline double max_off_identity(const std::array<cd, 9>& t) {
  double m = 0.0;
  for (int i = 1; i < 9; ++i) m = std::max(m, std::abs(t[i]));
  return m;
}

/// (d-1) max|t(rho)| / (Tr rho^2 - 1/9).
inline double lambda_min_closed_form(double a, double b, double g) {
  const Mat rho = family(a, b, g);
  const double purity = (rho * rho).trace().real();
  return 2.0 * max_off_identity(weyl_coefficients(rho)) / (purity - 1.0 / 9.0);
}

/// Plane point a = (1+g+eps)/6, b = (-5+7g+eps)/21.
inline std::array<double, 3> plane_point(double eps, double g) {
  return {(1.0 + g + eps) / 6.0, (-5.0 + 7.0 * g + eps) / 21.0, g};
}

/// Bisection of the PPT/NPT transition of f(t) = pt_min(path(t)).
template <class F>
double bisect(F f, double lo, double hi) {
  const bool lo_pos = f(lo) >= 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) >= 0.0) == lo_pos ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Haar-random product vector from a seeded engine.
class ProductSampler {
 public:
  explicit ProductSampler(std::uint64_t seed) : rng_(seed) {}

  Vec next() {
    auto local = [&] {
      Vec v(3);
      for (int i = 0; i < 3; ++i) v(i) = cd(normal_(rng_), normal_(rng_));
      return Vec(v / v.norm());
    };
    const Vec a = local();
    const Vec b = local();
    Vec out(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out(i * 3 + j) = a(i) * b(j);
    return out;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace oracle
