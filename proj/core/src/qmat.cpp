#include "msx/qmat.hpp"

#include <algorithm>
#include <cmath>

namespace msx {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch " + describe_dims(a, b));
  }
}

}  // namespace

std::string describe_dims(const ComplexMatrix& a, const ComplexMatrix& b) {
  return "(" + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")";
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw DimensionError("ComplexMatrix: dim must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw DimensionError("ComplexMatrix: dim must be >= 1");
  if (data_.size() != dim * dim) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(dim * dim) +
                         " entries, got " + std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(*this);
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
ComplexMatrix operator*(ComplexMatrix m, Complex scale) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

Complex trace(const ComplexMatrix& m) noexcept {
  Complex t{};
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

double frobenius_norm(const ComplexMatrix& m) noexcept {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "hs_inner");
  // Tr(A^dagger B) = sum_{jk} conj(A_jk) B_jk
  Complex s{};
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) s += std::conj(ea[i]) * eb[i];
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != m.dim()) {
    throw DimensionError("partial_transpose: " + std::to_string(m.dim()) + " != " +
                         std::to_string(dim_a) + "*" + std::to_string(dim_b));
  }
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j)
      for (std::size_t k = 0; k < dim_b; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          out(i * dim_b + k, j * dim_b + l) = m(i * dim_b + l, j * dim_b + k);
  return out;
}

double max_hermitian_asymmetry(const ComplexMatrix& m) noexcept {
  double worst = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = r; c < m.dim(); ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) noexcept {
  return max_hermitian_asymmetry(m) <= tol;
}

ComplexMatrix outer_product(std::span<const Complex> ket) {
  ComplexMatrix out(ket.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < ket.size(); ++c) out(r, c) = ket[r] * std::conj(ket[c]);
  return out;
}

Complex expectation(const ComplexMatrix& m, std::span<const Complex> ket) {
  if (ket.size() != m.dim()) {
    throw DimensionError("expectation: ket size " + std::to_string(ket.size()) +
                         " vs matrix dim " + std::to_string(m.dim()));
  }
  Complex s{};
  for (std::size_t r = 0; r < m.dim(); ++r) {
    Complex row{};
    for (std::size_t c = 0; c < m.dim(); ++c) row += m(r, c) * ket[c];
    s += std::conj(ket[r]) * row;
  }
  return s;
}

}  // namespace msx
