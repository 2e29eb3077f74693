#pragma once

#include <limits>

namespace squashlab::bloch {

// Atomic decay rates in units of the natural linewidth (set to 1).
// The dipole quadratures decay as <sx> ~ exp(-gamma_x t), <sy> ~
// exp(-gamma_y t); the inversion obeys d<sz>/dt = -gamma_z <sz> - pump.
struct BlochRates {
  double gamma_x;
  double gamma_y;
  double gamma_z;
  double pump;  // the constant C driving the inversion
};

struct BlochState {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm_squared() const { return x * x + y * y + z * z; }
};

// Bath coupling for the squashed master equation: mode matching eta, input
// squeezing L, feedback parameters lambda = eta*g/(1-g) per quadrature and
// detector excess-noise factors theta = 1/epsilon - 1. An absent channel
// (epsilon = 0, theta infinite) is encoded as lambda = 0.
struct BathParams {
  double eta = 1.0;
  double L = 1.0;
  double lambda_x = 0.0;
  double lambda_y = 0.0;
  double theta_x = 0.0;
  double theta_y = 0.0;

  void validate() const;

  double epsilon_x() const { return 1.0 / (1.0 + theta_x); }
  double epsilon_y() const { return 1.0 / (1.0 + theta_y); }

  static double lambda_from_gain(double eta, double gain);

  // Assemble from loop quantities, converting gains and efficiencies.
  static BathParams from_loop(double eta, double L, double gain_x,
                              double eps_x, double gain_y, double eps_y);
};

// Squeezed-bath rates: gamma_x = [(1-eta) + eta L]/2, gamma_y with 1/L,
// gamma_z = gamma_x + gamma_y, C = 1.
BlochRates rates_squeezed(double eta, double L);

// Squashed-bath rates:
//   gamma_x = [(1-eta) + eta L (1 + lambda_x/eta)^2 + lambda_x^2 theta_x/eta]/2
// (Y analogous with 1/L), C = 1 + lambda_x + lambda_y.
BlochRates rates_squashed(const BathParams& params);

// Feedback parameter minimizing gamma_y: -eta / (1 + L*theta).
double optimal_lambda_y(double eta, double L, double theta);

// Closed-form solution of the Bloch equations at time t >= 0.
BlochState evolve_bloch(const BlochRates& rates, const BlochState& initial,
                        double t);

// Fluorescence power spectrum into the unmatched modes:
//   P(w) = (1-eta)(gamma_z - C) / (8 pi gamma_z)
//          * [gamma_x/(gamma_x^2 + w^2) + gamma_y/(gamma_y^2 + w^2)].
double fluorescence_spectrum(double eta, const BlochRates& rates,
                             double omega);

// Full width at half maximum of the two-Lorentzian lineshape, by bisection.
double fluorescence_fwhm(const BlochRates& rates);

}  // namespace squashlab::bloch
