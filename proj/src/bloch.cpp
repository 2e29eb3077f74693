#include "squashlab/bloch.hpp"

#include <cmath>
#include <numbers>

#include "squashlab/errors.hpp"

namespace squashlab::bloch {

namespace {
constexpr double kFwhmTol = 1e-9;
}  // namespace

void BathParams::validate() const {
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw DomainError("BathParams: eta must lie in [0, 1]");
  }
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError("BathParams: L must be positive and finite");
  }
  if (!(theta_x >= 0.0) || !(theta_y >= 0.0)) {
    throw DomainError("BathParams: theta must be >= 0");
  }
  if (eta == 0.0 && (lambda_x != 0.0 || lambda_y != 0.0)) {
    throw DomainError("BathParams: feedback requires coupling (eta > 0)");
  }
  // lambda = -eta is the g -> -inf limit; it stays finite and is the frozen
  // point, so the closed boundary is accepted.
  if (lambda_x < -eta) {
    throw DomainError("BathParams: lambda_x must be >= -eta");
  }
  if (lambda_y < -eta) {
    throw DomainError("BathParams: lambda_y must be >= -eta");
  }
  // theta = inf marks an absent channel; feedback through it is meaningless.
  if (std::isinf(theta_x) && lambda_x != 0.0) {
    throw DomainError("BathParams: lambda_x requires epsilon_x > 0");
  }
  if (std::isinf(theta_y) && lambda_y != 0.0) {
    throw DomainError("BathParams: lambda_y requires epsilon_y > 0");
  }
  if (epsilon_x() + epsilon_y() > 1.0 + 1e-12) {
    throw DomainError(
        "BathParams: infeasible detection, epsilon_x + epsilon_y > 1");
  }
}

double BathParams::lambda_from_gain(double eta, double gain) {
  if (gain >= 1.0) {
    throw DomainError("BathParams: round-loop gain must be < 1");
  }
  return eta * gain / (1.0 - gain);
}

BathParams BathParams::from_loop(double eta, double L, double gain_x,
                                 double eps_x, double gain_y, double eps_y) {
  BathParams p;
  p.eta = eta;
  p.L = L;
  p.theta_x = eps_x > 0.0 ? 1.0 / eps_x - 1.0
                          : std::numeric_limits<double>::infinity();
  p.theta_y = eps_y > 0.0 ? 1.0 / eps_y - 1.0
                          : std::numeric_limits<double>::infinity();
  p.lambda_x = eps_x > 0.0 ? lambda_from_gain(eta, gain_x) : 0.0;
  p.lambda_y = eps_y > 0.0 ? lambda_from_gain(eta, gain_y) : 0.0;
  if (eps_x == 0.0 && gain_x != 0.0) {
    throw DomainError("BathParams: gain_x requires epsilon_x > 0");
  }
  if (eps_y == 0.0 && gain_y != 0.0) {
    throw DomainError("BathParams: gain_y requires epsilon_y > 0");
  }
  p.validate();
  return p;
}

BlochRates rates_squeezed(double eta, double L) {
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw DomainError("rates_squeezed: eta must lie in [0, 1]");
  }
  if (!(L > 0.0)) {
    throw DomainError("rates_squeezed: L must be positive");
  }
  const double gx = 0.5 * ((1.0 - eta) + eta * L);
  const double gy = 0.5 * ((1.0 - eta) + eta / L);
  return {gx, gy, gx + gy, 1.0};
}

namespace {
// One quadrature's dipole decay rate. s0 is that quadrature's input
// spectrum (L for X, 1/L for Y). lambda = 0 drops the feedback terms so the
// theta value is irrelevant (absent channels carry theta = inf).
double quadrature_rate(double eta, double s0, double lambda, double theta) {
  if (lambda == 0.0) {
    return 0.5 * ((1.0 - eta) + eta * s0);
  }
  const double drive = 1.0 + lambda / eta;
  return 0.5 *
         ((1.0 - eta) + eta * s0 * drive * drive + lambda * lambda * theta / eta);
}
}  // namespace

BlochRates rates_squashed(const BathParams& params) {
  params.validate();
  const double gx =
      quadrature_rate(params.eta, params.L, params.lambda_x, params.theta_x);
  const double gy = quadrature_rate(params.eta, 1.0 / params.L,
                                    params.lambda_y, params.theta_y);
  return {gx, gy, gx + gy, 1.0 + params.lambda_x + params.lambda_y};
}

double optimal_lambda_y(double eta, double L, double theta) {
  if (!(eta > 0.0) || !(eta <= 1.0)) {
    throw DomainError("optimal_lambda_y: eta must lie in (0, 1]");
  }
  if (!(L > 0.0)) {
    throw DomainError("optimal_lambda_y: L must be positive");
  }
  if (!(theta >= 0.0)) {
    throw DomainError("optimal_lambda_y: theta must be >= 0");
  }
  if (std::isinf(theta)) return 0.0;
  return -eta / (1.0 + L * theta);
}

BlochState evolve_bloch(const BlochRates& rates, const BlochState& initial,
                        double t) {
  if (!(t >= 0.0)) {
    throw DomainError("evolve_bloch: t must be >= 0");
  }
  BlochState s;
  s.x = initial.x * std::exp(-rates.gamma_x * t);
  s.y = initial.y * std::exp(-rates.gamma_y * t);
  if (rates.gamma_z == 0.0) {
    if (rates.pump != 0.0) {
      throw DomainError(
          "evolve_bloch: gamma_z = 0 with nonzero pump has no solution");
    }
    s.z = initial.z;  // frozen atom
  } else {
    const double z_ss = -rates.pump / rates.gamma_z;
    s.z = z_ss + (initial.z - z_ss) * std::exp(-rates.gamma_z * t);
  }
  return s;
}

double fluorescence_spectrum(double eta, const BlochRates& rates,
                             double omega) {
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw DomainError("fluorescence_spectrum: eta must lie in [0, 1]");
  }
  if (!(rates.gamma_x > 0.0) || !(rates.gamma_y > 0.0)) {
    throw DomainError("fluorescence_spectrum: dipole rates must be positive");
  }
  if (rates.gamma_z < rates.pump) {
    throw DomainError(
        "fluorescence_spectrum: gamma_z < C, steady state unphysical");
  }
  const double prefactor = (1.0 - eta) * (rates.gamma_z - rates.pump) /
                           (8.0 * std::numbers::pi * rates.gamma_z);
  const double lx =
      rates.gamma_x / (rates.gamma_x * rates.gamma_x + omega * omega);
  const double ly =
      rates.gamma_y / (rates.gamma_y * rates.gamma_y + omega * omega);
  return prefactor * (lx + ly);
}

double fluorescence_fwhm(const BlochRates& rates) {
  if (!(rates.gamma_x > 0.0) || !(rates.gamma_y > 0.0)) {
    throw DomainError("fluorescence_fwhm: dipole rates must be positive");
  }
  const auto shape = [&](double w) {
    return rates.gamma_x / (rates.gamma_x * rates.gamma_x + w * w) +
           rates.gamma_y / (rates.gamma_y * rates.gamma_y + w * w);
  };
  const double half = 0.5 * shape(0.0);
  double lo = 0.0;
  double hi = rates.gamma_y;
  while (shape(hi) > half) hi *= 2.0;
  while (hi - lo > kFwhmTol) {
    const double mid = 0.5 * (lo + hi);
    (shape(mid) > half ? lo : hi) = mid;
  }
  return lo + hi;  // 2 * half-width
}

}  // namespace squashlab::bloch
