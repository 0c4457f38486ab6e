#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "convert.hpp"
#include "msx/eigen.hpp"
#include "msx/json_io.hpp"
#include "msx/qmat.hpp"

using msx::Complex;
using msx::ComplexMatrix;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = nd(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = {nd(rng), nd(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace

TEST(ComplexMatrix, IdentityAndArithmetic) {
  const auto id = ComplexMatrix::identity(3);
  EXPECT_EQ(msx::trace(id), Complex(3.0));
  ComplexMatrix a(3);
  a(0, 1) = {1.0, 2.0};
  const auto b = a + id;
  EXPECT_EQ(b(0, 1), Complex(1.0, 2.0));
  EXPECT_EQ((b - a), id);
  EXPECT_EQ((a * id), a);
  EXPECT_EQ(a.adjoint()(1, 0), Complex(1.0, -2.0));
  EXPECT_EQ(a.transpose()(1, 0), Complex(1.0, 2.0));
  EXPECT_EQ(a.conjugate()(0, 1), Complex(1.0, -2.0));
  EXPECT_EQ((Complex(2.0) * a)(0, 1), Complex(2.0, 4.0));
}

TEST(ComplexMatrix, DimensionMismatchThrows) {
  EXPECT_THROW(ComplexMatrix(2) + ComplexMatrix(3), msx::DimensionError);
  EXPECT_THROW(ComplexMatrix(2) * ComplexMatrix(3), msx::DimensionError);
  EXPECT_THROW(msx::hs_inner(ComplexMatrix(2), ComplexMatrix(3)), msx::DimensionError);
  EXPECT_THROW(msx::partial_transpose(ComplexMatrix(9), 2, 3), msx::DimensionError);
}

TEST(ComplexMatrix, KronMatchesOracle) {
  std::mt19937_64 rng(1);
  const auto a = random_hermitian(3, rng);
  const auto b = random_hermitian(3, rng);
  const oracle::Mat expected = oracle::kron(oracle::to_eigen(a), oracle::to_eigen(b));
  EXPECT_LT((oracle::to_eigen(msx::kron(a, b)) - expected).norm(), 1e-14);
}

TEST(ComplexMatrix, PartialTransposeMatchesOracle) {
  std::mt19937_64 rng(2);
  const auto m = random_hermitian(9, rng);
  const oracle::Mat expected = oracle::partial_transpose(oracle::to_eigen(m));
  EXPECT_LT((oracle::to_eigen(msx::partial_transpose(m, 3, 3)) - expected).norm(), 1e-14);
}

TEST(ComplexMatrix, HilbertSchmidtInnerProduct) {
  std::mt19937_64 rng(3);
  const auto a = random_hermitian(9, rng);
  const auto b = random_hermitian(9, rng);
  const Complex expected = (oracle::to_eigen(a).adjoint() * oracle::to_eigen(b)).trace();
  EXPECT_NEAR(std::abs(msx::hs_inner(a, b) - expected), 0.0, 1e-12);
  EXPECT_NEAR(msx::frobenius_norm(a), oracle::to_eigen(a).norm(), 1e-12);
}

TEST(ComplexMatrix, HermitianChecks) {
  ComplexMatrix m = ComplexMatrix::identity(2);
  EXPECT_TRUE(msx::is_hermitian(m));
  m(0, 1) = {0.0, 1e-6};
  EXPECT_FALSE(msx::is_hermitian(m));
  EXPECT_NEAR(msx::max_hermitian_asymmetry(m), 1e-6, 1e-18);
}

TEST(Eigen, TwoByTwoClosedForm) {
  // [[a, c], [c*, b]] has eigenvalues (a+b)/2 -+ sqrt(((a-b)/2)^2 + |c|^2)
  ComplexMatrix m(2);
  m(0, 0) = 0.3;
  m(1, 1) = -1.1;
  m(0, 1) = {0.4, -0.7};
  m(1, 0) = {0.4, 0.7};
  const double mean = -0.4, rad = std::sqrt(0.49 + 0.16 + 0.49);
  const auto s = msx::hermitian_eigenvalues(m);
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.min(), mean - rad, 1e-14);
  EXPECT_NEAR(s.max(), mean + rad, 1e-14);
}

TEST(Eigen, MatchesEigenOnRandomHermitian) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = trial % 2 ? 9 : 4;
    const auto m = random_hermitian(n, rng, trial % 3 == 0 ? 1e3 : 1.0);
    const auto ours = msx::hermitian_eigenvalues(m).eigenvalues;
    const Eigen::VectorXd ref = oracle::eigenvalues(oracle::to_eigen(m));
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(ours[k], ref(static_cast<Eigen::Index>(k)), 1e-11 * scale);
  }
}

TEST(Eigen, DegenerateSpectrum) {
  const auto s = msx::hermitian_eigenvalues(ComplexMatrix::identity(9));
  for (double v : s.eigenvalues) EXPECT_NEAR(v, 1.0, 1e-15);
  EXPECT_NEAR(s.sum(), 9.0, 1e-13);
  EXPECT_NEAR(s.sum_of_squares(), 9.0, 1e-13);
}

TEST(Eigen, RejectsNonHermitian) {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(msx::hermitian_eigenvalues(m), msx::NonHermitianError);
}

TEST(JsonIo, RoundTrip) {
  std::mt19937_64 rng(5);
  const auto m = random_hermitian(9, rng);
  const auto doc = msx::matrix_to_json(m);
  EXPECT_EQ(doc.at("dim"), 9);
  EXPECT_EQ(doc.at("entries").size(), 81u);
  EXPECT_EQ(msx::matrix_from_json(doc), m);
}

TEST(JsonIo, RejectsMalformed) {
  EXPECT_THROW(msx::matrix_from_json(nlohmann::json::object()), std::invalid_argument);
  EXPECT_THROW(msx::matrix_from_json({{"dim", 2}, {"entries", {{1, 0}, {0, 0}, {0, 0}}}}),
               std::invalid_argument);
  EXPECT_THROW(msx::matrix_from_json({{"dim", 1}, {"entries", {{"x", 0}}}}), std::invalid_argument);
}
