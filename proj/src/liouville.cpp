#include "squashlab/liouville.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "squashlab/errors.hpp"

namespace squashlab::liouville {

namespace {

using namespace std::complex_literals;

constexpr double kTraceTol = 1e-12;
constexpr double kPositivityTol = 1e-10;
constexpr double kCouplingTol = 1e-10;   // Bloch decoupling threshold
constexpr double kNullGapTol = 1e-9;     // steady-state uniqueness
constexpr double kCorrelationFloor = 1e-8;
constexpr double kMaxCorrelationTime = 1e5;

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

// Superoperators for left/right multiplication under column stacking:
// vec(A rho B) = kron(B^T, A) vec(rho).
Matrix4c left_mult(const Matrix2c& a) { return kron2(Matrix2c::Identity(), a); }
Matrix4c right_mult(const Matrix2c& b) {
  return kron2(b.transpose(), Matrix2c::Identity());
}

// -i*lambda*[coupling, (B rho + rho B^dag)/2]
Matrix4c feedback_commutator(double lambda, const Matrix2c& coupling,
                             const Matrix2c& b) {
  const Matrix4c sandwich =
      0.5 * (left_mult(b) + right_mult(b.adjoint()));
  const Matrix4c commutator = left_mult(coupling) - right_mult(coupling);
  return -1.0i * lambda * (commutator * sandwich);
}

}  // namespace

Matrix2c sigma_minus() {
  Matrix2c m;
  m << 0, 0, 1, 0;
  return m;
}

Matrix2c sigma_plus() {
  Matrix2c m;
  m << 0, 1, 0, 0;
  return m;
}

Matrix2c sigma_x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2c sigma_y() {
  Matrix2c m;
  m << 0, -1.0i, 1.0i, 0;
  return m;
}

Matrix2c sigma_z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}

Vector4c vectorize(const Matrix2c& m) {
  Vector4c v;
  v << m(0, 0), m(1, 0), m(0, 1), m(1, 1);
  return v;
}

Matrix2c unvectorize(const Vector4c& v) {
  Matrix2c m;
  m << v(0), v(2), v(1), v(3);
  return m;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix2c& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kTraceTol) {
    throw DomainError("DensityMatrix: not Hermitian");
  }
  if (std::abs(m.trace() - 1.0) > kTraceTol) {
    throw DomainError("DensityMatrix: trace must be 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(m);
  if (es.eigenvalues().minCoeff() < -kPositivityTol) {
    throw DomainError("DensityMatrix: negative eigenvalue");
  }
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix DensityMatrix::from_bloch(const bloch::BlochState& s) {
  if (s.norm_squared() > 1.0 + kPositivityTol) {
    throw DomainError("DensityMatrix: Bloch vector outside unit sphere");
  }
  const Matrix2c m = 0.5 * (Matrix2c::Identity() + s.x * sigma_x() +
                            s.y * sigma_y() + s.z * sigma_z());
  return DensityMatrix(m);
}

bloch::BlochState DensityMatrix::bloch_vector() const {
  bloch::BlochState s;
  s.x = (m_ * sigma_x()).trace().real();
  s.y = (m_ * sigma_y()).trace().real();
  s.z = (m_ * sigma_z()).trace().real();
  return s;
}

Matrix2c Liouvillian::apply(const Matrix2c& rho) const {
  return unvectorize(matrix * vectorize(rho));
}

Matrix4c Liouvillian::exponential(double t) const {
  Eigen::ComplexEigenSolver<Matrix4c> es(matrix);
  if (es.info() == Eigen::Success) {
    const Matrix4c& v = es.eigenvectors();
    Eigen::FullPivLU<Matrix4c> lu(v);
    // Fall back to Pade scaling-and-squaring near degenerate spectra,
    // where the eigenvector basis is ill conditioned.
    if (lu.isInvertible() &&
        v.norm() * lu.inverse().norm() < 1e8) {
      Vector4c phases;
      for (int k = 0; k < 4; ++k) {
        phases(k) = std::exp(es.eigenvalues()(k) * t);
      }
      return v * phases.asDiagonal() * lu.inverse();
    }
  }
  return (matrix * t).exp();
}

Matrix2c Liouvillian::propagate(const Matrix2c& rho, double t) const {
  return unvectorize(exponential(t) * vectorize(rho));
}

Liouvillian dissipator(const Matrix2c& op) {
  const Matrix2c opd_op = op.adjoint() * op;
  Liouvillian lv;
  lv.matrix = kron2(op.conjugate(), op) - 0.5 * left_mult(opd_op) -
              0.5 * right_mult(opd_op);
  return lv;
}

Liouvillian build_squeezed_me(double eta, double L) {
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw DomainError("build_squeezed_me: eta must lie in [0, 1]");
  }
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError("build_squeezed_me: L must be positive and finite");
  }
  const Matrix2c squeeze_jump =
      (L + 1.0) * sigma_minus() - (L - 1.0) * sigma_plus();
  Liouvillian lv;
  lv.matrix = (1.0 - eta) * dissipator(sigma_minus()).matrix +
              eta / (4.0 * L) * dissipator(squeeze_jump).matrix;
  return lv;
}

Liouvillian build_squashed_me(const bloch::BathParams& p) {
  p.validate();
  Liouvillian lv = build_squeezed_me(p.eta, p.L);
  if (p.lambda_x != 0.0) {
    const Matrix2c bx =
        (p.L + 1.0) * sigma_minus() - (p.L - 1.0) * sigma_plus();
    lv.matrix += feedback_commutator(p.lambda_x, 0.5 * sigma_y(), bx);
    lv.matrix += p.lambda_x * p.lambda_x * (p.L + p.theta_x) / p.eta *
                 dissipator(0.5 * sigma_y()).matrix;
  }
  if (p.lambda_y != 0.0) {
    const double invL = 1.0 / p.L;
    const Matrix2c by =
        -1.0i * ((invL + 1.0) * sigma_minus() + (invL - 1.0) * sigma_plus());
    lv.matrix += feedback_commutator(p.lambda_y, 0.5 * sigma_x(), by);
    lv.matrix += p.lambda_y * p.lambda_y * (invL + p.theta_y) / p.eta *
                 dissipator(0.5 * sigma_x()).matrix;
  }
  return lv;
}

bloch::BlochRates extract_bloch_rates(const Liouvillian& lv) {
  const Matrix2c paulis[3] = {sigma_x(), sigma_y(), sigma_z()};
  // d<s_k>/dt = sum_j A_kj <s_j> + c_k from rho = (I + sum_j v_j s_j)/2.
  double coupling[3][3];
  double constant[3];
  const Matrix2c l_of_identity = lv.apply(Matrix2c::Identity());
  const Matrix2c l_of_pauli[3] = {lv.apply(paulis[0]), lv.apply(paulis[1]),
                                  lv.apply(paulis[2])};
  for (int k = 0; k < 3; ++k) {
    constant[k] = 0.5 * (paulis[k] * l_of_identity).trace().real();
    for (int j = 0; j < 3; ++j) {
      const std::complex<double> entry =
          0.5 * (paulis[k] * l_of_pauli[j]).trace();
      if (std::abs(entry.imag()) > kCouplingTol) {
        throw RateExtractionError(
            "extract_bloch_rates: complex Bloch coefficient");
      }
      coupling[k][j] = entry.real();
    }
  }
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      if (k != j && std::abs(coupling[k][j]) > kCouplingTol) {
        throw RateExtractionError(
            "extract_bloch_rates: x/y/z dynamics do not decouple");
      }
    }
  }
  if (std::abs(constant[0]) > kCouplingTol ||
      std::abs(constant[1]) > kCouplingTol) {
    throw RateExtractionError(
        "extract_bloch_rates: dipole equations are not homogeneous");
  }
  return {-coupling[0][0], -coupling[1][1], -coupling[2][2], -constant[2]};
}

DensityMatrix steady_state(const Liouvillian& lv) {
  Eigen::ComplexEigenSolver<Matrix4c> es(lv.matrix);
  if (es.info() != Eigen::Success) {
    throw NumericalError("steady_state: eigendecomposition failed");
  }
  int null_index = 0;
  double null_abs = std::numeric_limits<double>::infinity();
  double second_abs = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    const double a = std::abs(es.eigenvalues()(k));
    if (a < null_abs) {
      second_abs = null_abs;
      null_abs = a;
      null_index = k;
    } else if (a < second_abs) {
      second_abs = a;
    }
  }
  if (second_abs < kNullGapTol) {
    throw DegenerateSteadyStateError(
        "steady_state: no unique steady state (degenerate null space)");
  }
  Matrix2c rho = unvectorize(es.eigenvectors().col(null_index));
  const std::complex<double> tr = rho.trace();
  if (std::abs(tr) < kNullGapTol) {
    throw DegenerateSteadyStateError(
        "steady_state: null vector is traceless");
  }
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix::from_matrix(rho);
}

std::vector<double> regression_spectrum(const Liouvillian& lv, double eta,
                                        std::span<const double> omega_grid) {
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw DomainError("regression_spectrum: eta must lie in [0, 1]");
  }
  const DensityMatrix rho_ss = steady_state(lv);
  const Matrix2c seed = sigma_minus() * rho_ss.matrix();
  const Matrix2c sp = sigma_plus();

  const auto correlation_at = [&](double t) {
    return (sp * lv.propagate(seed, t)).trace();
  };

  // Dipole correlation G(t) = <sigma^dag(t) sigma(0)>_ss for t >= 0.
  // Grid length doubles until the endpoint correlation is negligible.
  const double g0 = std::abs(correlation_at(0.0));
  if (g0 < kCorrelationFloor) {
    return std::vector<double>(omega_grid.size(), 0.0);
  }
  double t_end = 16.0;
  while (std::abs(correlation_at(t_end)) >= kCorrelationFloor) {
    t_end *= 2.0;
    if (t_end > kMaxCorrelationTime) {
      throw NumericalError(
          "regression_spectrum: correlation does not decay, grid too long");
    }
  }

  double scale = 1.0;
  for (const double w : omega_grid) scale = std::max(scale, std::abs(w));
  scale = std::max(scale, lv.matrix.cwiseAbs().maxCoeff());
  // Simpson step fine enough for ~1e-9 absolute quadrature error.
  const double h_target = 0.05 / scale;
  std::size_t n_steps = static_cast<std::size_t>(std::ceil(t_end / h_target));
  n_steps += n_steps % 2;  // Simpson needs an even interval count
  const double h = t_end / static_cast<double>(n_steps);

  // March exp(L h) forward once; each step is a 4x4 matrix-vector product.
  const Matrix4c step = lv.exponential(h);
  std::vector<std::complex<double>> g(n_steps + 1);
  Vector4c state = vectorize(seed);
  for (std::size_t j = 0; j <= n_steps; ++j) {
    g[j] = (sp * unvectorize(state)).trace();
    state = step * state;
  }

  // Two-sided transform of the symmetrized correlation:
  // P(w) = (1-eta)/(2 pi) * 2 Re int_0^T e^{iwt} G(t) dt, Simpson weights.
  std::vector<double> spectrum(omega_grid.size());
  for (std::size_t m = 0; m < omega_grid.size(); ++m) {
    const double w = omega_grid[m];
    const std::complex<double> rot{std::cos(w * h), std::sin(w * h)};
    std::complex<double> phase{1.0, 0.0};
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j <= n_steps; ++j) {
      double weight = (j == 0 || j == n_steps) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      acc += weight * phase * g[j];
      phase *= rot;
    }
    acc *= h / 3.0;
    spectrum[m] = (1.0 - eta) / (2.0 * std::numbers::pi) * 2.0 * acc.real();
  }
  return spectrum;
}

}  // namespace squashlab::liouville
