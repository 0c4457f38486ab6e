#include "msx/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace msx {

namespace {

constexpr double kOffDiagonalTol = 1e-13;
constexpr double kReconstructionTol = 1e-9;
constexpr int kMaxSweeps = 100;

std::string asymmetry_message(double asymmetry) {
  std::ostringstream os;
  os << "hermitian_eigenvalues: input is not Hermitian (max |M_jk - conj(M_kj)| = "
     << asymmetry << ", tolerance " << kInputHermitianTol << ")";
  return os.str();
}

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary V = diag(1, e^{-i phi}) * Givens(c, s),
// where e^{i phi} = a(p,q)/|a(p,q)|.
void rotate(ComplexMatrix& a, std::size_t p, std::size_t q) {
  const Complex g = a(p, q);
  const double mag = std::abs(g);
  if (mag < 1e-300) return;
  const Complex phase = g / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * std::conj(phase) * akq;
    a(k, q) = s * akp + c * std::conj(phase) * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

}  // namespace

double Spectrum::sum() const { return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0); }

double Spectrum::sum_of_squares() const {
  double s = 0.0;
  for (double x : eigenvalues) s += x * x;
  return s;
}

NonHermitianError::NonHermitianError(double asymmetry)
    : std::invalid_argument(asymmetry_message(asymmetry)), asymmetry_(asymmetry) {}

Spectrum hermitian_eigenvalues(const ComplexMatrix& m) {
  const double asym = max_hermitian_asymmetry(m);
  if (asym > kInputHermitianTol) throw NonHermitianError(asym);

  // Symmetrise so the rotations see an exactly Hermitian matrix.
  ComplexMatrix a(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

  const double scale = std::max(1.0, frobenius_norm(a));
  const double threshold = kOffDiagonalTol * scale;
  const std::size_t n = a.dim();

  int sweep = 0;
  while (off_diagonal_mass(a) >= threshold) {
    if (++sweep > kMaxSweeps) {
      throw std::runtime_error("hermitian_eigenvalues: Jacobi sweeps did not converge");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, p, q);
  }

  Spectrum spec;
  spec.eigenvalues.reserve(n);
  for (std::size_t i = 0; i < n; ++i) spec.eigenvalues.push_back(a(i, i).real());
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end());

  // Tr M and Tr M^2 must survive the rotations.
  const double tr = trace(m).real();
  const double fro = frobenius_norm(m);
  if (std::abs(spec.sum() - tr) > kReconstructionTol * scale ||
      std::abs(spec.sum_of_squares() - fro * fro) > kReconstructionTol * scale * scale) {
    throw std::runtime_error("hermitian_eigenvalues: trace reconstruction check failed");
  }
  return spec;
}

double smallest_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).min(); }

}  // namespace msx
