#pragma once

// Dense complex matrices for small bipartite systems (dim <= 81).

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace msx {

using Complex = std::complex<double>;

/// Slack allowed when a caller hands us a matrix that should be Hermitian.
inline constexpr double kInputHermitianTol = 1e-10;
/// Slack for matrices this library produced itself.
inline constexpr double kInternalHermitianTol = 1e-12;

/// Thrown when operand shapes do not fit together. Always a caller bug.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Square, row-major, double-precision complex matrix with value semantics.
class ComplexMatrix {
 public:
  /// Zero matrix of side `dim`.
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);

Complex trace(const ComplexMatrix& m) noexcept;
double frobenius_norm(const ComplexMatrix& m) noexcept;

/// Hilbert-Schmidt scalar product Tr(A^dagger B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Transposes the second tensor factor of a (dim_a*dim_b)-sided operator.
/// Each dim_b x dim_b block is transposed in place; the map is an exact
/// involution.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);

/// max_{jk} |M[j][k] - conj(M[k][j])|.
double max_hermitian_asymmetry(const ComplexMatrix& m) noexcept;

bool is_hermitian(const ComplexMatrix& m, double tol = kInternalHermitianTol) noexcept;

/// |v><v| for an (unnormalised) ket.
ComplexMatrix outer_product(std::span<const Complex> ket);

/// <v|M|v>.
Complex expectation(const ComplexMatrix& m, std::span<const Complex> ket);

std::string describe_dims(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace msx
