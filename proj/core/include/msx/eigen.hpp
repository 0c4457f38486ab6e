#pragma once

#include <stdexcept>
#include <vector>

#include "msx/qmat.hpp"

namespace msx {

/// Eigenvalues of a Hermitian matrix, ascending.
struct Spectrum {
  std::vector<double> eigenvalues;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  double sum() const;
  double sum_of_squares() const;
};

/// Raised when hermitian_eigenvalues() receives a matrix whose asymmetry
/// exceeds kInputHermitianTol.
class NonHermitianError : public std::invalid_argument {
 public:
  explicit NonHermitianError(double asymmetry);
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

/// Cyclic Jacobi diagonalisation. Sweeps until the off-diagonal Frobenius
/// mass drops below 1e-13 * max(1, ||M||_F).
Spectrum hermitian_eigenvalues(const ComplexMatrix& m);

double smallest_eigenvalue(const ComplexMatrix& m);

}  // namespace msx
