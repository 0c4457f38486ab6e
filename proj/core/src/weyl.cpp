#include "msx/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace msx {

namespace {

void require_dimension(int d) {
  if (d < 2) throw std::invalid_argument("Weyl operators need d >= 2, got " + std::to_string(d));
}

Complex root_of_unity(int power, int d) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) / d;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

WeylIndex::WeylIndex(int n, int m, int d) : n_(n), m_(m), d_(d) {
  require_dimension(d);
  if (n < 0 || n >= d || m < 0 || m >= d) {
    throw std::out_of_range("WeylIndex: (" + std::to_string(n) + ", " + std::to_string(m) +
                            ") outside [0, " + std::to_string(d) + ")");
  }
}

WeylIndex WeylIndex::phase_negated() const noexcept {
  return WeylIndex((d_ - n_) % d_, m_, d_);
}

ComplexMatrix weyl_operator(const WeylIndex& idx) {
  const int d = idx.d();
  ComplexMatrix u(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    u(static_cast<std::size_t>(k), static_cast<std::size_t>((k + idx.m()) % d)) =
        root_of_unity(k * idx.n(), d);
  }
  return u;
}

ComplexMatrix max_entangled_state(int d) {
  require_dimension(d);
  const auto n = static_cast<std::size_t>(d);
  ComplexMatrix p(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) p(j * n + j, k * n + k) = 1.0 / d;
  return p;
}

ComplexMatrix bell_projector(const WeylIndex& idx) {
  const auto local = kron(weyl_operator(idx), ComplexMatrix::identity(static_cast<std::size_t>(idx.d())));
  return local * max_entangled_state(idx.d()) * local.adjoint();
}

ComplexMatrix weyl_tensor_element(const WeylIndex& idx) {
  return kron(weyl_operator(idx), weyl_operator(idx.phase_negated()));
}

double WeylCoefficients::max_off_identity() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < coeffs.size(); ++i) worst = std::max(worst, std::abs(coeffs[i]));
  return worst;
}

WeylCoefficients WeylCoefficients::conjugated() const {
  WeylCoefficients out = *this;
  for (auto& z : out.coeffs) z = std::conj(z);
  return out;
}

WeylCoefficients weyl_tensor_decompose(const ComplexMatrix& c, int d) {
  require_dimension(d);
  if (c.dim() != static_cast<std::size_t>(d * d)) {
    throw DimensionError("weyl_tensor_decompose: operator dim " + std::to_string(c.dim()) +
                         " != d^2 = " + std::to_string(d * d));
  }
  WeylCoefficients t;
  t.d = d;
  t.coeffs.resize(static_cast<std::size_t>(d * d));
  const double norm = 1.0 / static_cast<double>(d * d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m)
      t.at(n, m) = norm * hs_inner(weyl_tensor_element(WeylIndex(n, m, d)), c);
  t.residual = frobenius_norm(c - weyl_tensor_compose(t));
  return t;
}

ComplexMatrix weyl_tensor_compose(const WeylCoefficients& t) {
  const auto side = static_cast<std::size_t>(t.d * t.d);
  ComplexMatrix out(side);
  for (int n = 0; n < t.d; ++n)
    for (int m = 0; m < t.d; ++m) {
      const Complex tnm = t.at(n, m);
      if (tnm == Complex{}) continue;
      out += tnm * weyl_tensor_element(WeylIndex(n, m, t.d));
    }
  return out;
}

}  // namespace msx
