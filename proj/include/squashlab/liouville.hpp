#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "squashlab/bloch.hpp"

namespace squashlab::liouville {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// Pauli and ladder operators in the {excited, ground} basis.
Matrix2c sigma_minus();
Matrix2c sigma_plus();
Matrix2c sigma_x();
Matrix2c sigma_y();
Matrix2c sigma_z();

// Column-stacked 2x2 density operator.
Vector4c vectorize(const Matrix2c& m);
Matrix2c unvectorize(const Vector4c& v);

class DensityMatrix {
 public:
  // Validates Hermiticity, unit trace and positivity.
  static DensityMatrix from_matrix(const Matrix2c& m);
  static DensityMatrix from_bloch(const bloch::BlochState& s);

  const Matrix2c& matrix() const { return m_; }
  bloch::BlochState bloch_vector() const;

 private:
  explicit DensityMatrix(const Matrix2c& m) : m_(m) {}
  Matrix2c m_;
};

// 4x4 generator acting on column-stacked density matrices.
struct Liouvillian {
  Matrix4c matrix = Matrix4c::Zero();

  Matrix2c apply(const Matrix2c& rho) const;

  // rho(t) = exp(L t) rho. Eigendecomposition when well conditioned,
  // scaling-and-squaring otherwise.
  Matrix2c propagate(const Matrix2c& rho, double t) const;

  Matrix4c exponential(double t) const;
};

// D[A]rho = A rho A^dag - {A^dag A, rho}/2 as a superoperator.
Liouvillian dissipator(const Matrix2c& op);

// Squeezed-bath master equation
//   (1-eta) D[sigma] + eta/(4L) D[(L+1) sigma - (L-1) sigma^dag].
Liouvillian build_squeezed_me(double eta, double L);

// Squashed-bath master equation: the squeezed part plus, per fed-back
// quadrature, a current-feedback commutator linear in lambda and a
// detector-noise dissipator quadratic in lambda.
Liouvillian build_squashed_me(const bloch::BathParams& params);

// Decay rates and pump constant read off by applying the generator to the
// Pauli basis. Throws when the x/y/z dynamics do not decouple.
bloch::BlochRates extract_bloch_rates(const Liouvillian& lv);

DensityMatrix steady_state(const Liouvillian& lv);

// Fluorescence spectrum via the quantum regression theorem: the two-time
// dipole correlation from the steady state, symmetrized and Fourier
// transformed. Scaled by (1-eta)/(2 pi).
std::vector<double> regression_spectrum(const Liouvillian& lv, double eta,
                                        std::span<const double> omega_grid);

}  // namespace squashlab::liouville
