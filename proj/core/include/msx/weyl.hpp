#pragma once

// Weyl operators U_nm = sum_k w^{kn} |k><k+m| (w = e^{2 pi i/d}), two-qudit
// Bell projectors, and decomposition over the tensor span
// {U_nm (x) U_{-n,m}} in which the Bell-diagonal states live.

#include <vector>

#include "msx/qmat.hpp"

namespace msx {

/// Phase-space coordinate (n, m) of a Weyl operator; both in [0, d).
class WeylIndex {
 public:
  WeylIndex(int n, int m, int d);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int d() const noexcept { return d_; }

  /// (-n mod d, m), the partner index in U_nm (x) U_{-n,m}.
  WeylIndex phase_negated() const noexcept;

 private:
  int n_;
  int m_;
  int d_;
};

ComplexMatrix weyl_operator(const WeylIndex& idx);

/// |phi+_d><phi+_d| with |phi+_d> = d^{-1/2} sum_j |jj>.
ComplexMatrix max_entangled_state(int d);

/// P_nm = (U_nm (x) 1) |phi+><phi+| (U_nm^dagger (x) 1).
ComplexMatrix bell_projector(const WeylIndex& idx);

/// U_nm (x) U_{-n,m}.
ComplexMatrix weyl_tensor_element(const WeylIndex& idx);

/// Coefficients t_nm of C = sum t_nm U_nm (x) U_{-n,m} + (component outside
/// the span). `residual` is the Hilbert-Schmidt norm of that outside
/// component.
struct WeylCoefficients {
  int d = 0;
  std::vector<Complex> coeffs;  // index n*d + m
  double residual = 0.0;

  Complex at(int n, int m) const { return coeffs[static_cast<std::size_t>(n * d + m)]; }
  Complex& at(int n, int m) { return coeffs[static_cast<std::size_t>(n * d + m)]; }

  /// max_{(n,m) != (0,0)} |t_nm|
  double max_off_identity() const;

  WeylCoefficients conjugated() const;
};

/// t_nm = d^{-2} Tr[(U_nm (x) U_{-n,m})^dagger C].
WeylCoefficients weyl_tensor_decompose(const ComplexMatrix& c, int d);

/// sum_nm t_nm U_nm (x) U_{-n,m}; ignores the residual.
ComplexMatrix weyl_tensor_compose(const WeylCoefficients& t);

}  // namespace msx
