#pragma once

#include <complex>
#include <limits>
#include <vector>

namespace squashlab::spectra {

// Quadrature noise normalization: the shot-noise (vacuum) level is 1.
// Frequencies are in units of the atomic linewidth.

// Broadband squeezed input: white X-quadrature spectrum L, Y spectrum 1/L.
// L = 1 is vacuum/coherent input.
struct SqueezedInput {
  double L = 1.0;

  void validate() const;
  double spectrum_x() const { return L; }
  double spectrum_y() const { return 1.0 / L; }
};

// Homodyne detector for one quadrature. efficiency = 0 means the channel is
// absent; its excess-noise factor theta = 1/efficiency - 1 is then infinite.
struct DetectorChannel {
  double efficiency = 1.0;

  void validate() const;
  double theta() const;
  bool absent() const { return efficiency == 0.0; }
  static DetectorChannel absent_channel() { return DetectorChannel{0.0}; }
};

// Electro-optic loop: round-loop gains, per-quadrature detectors, minimum
// delay tau and single-pole response h(s) = bandwidth * exp(-bandwidth * s).
struct FeedbackConfig {
  double gain_x = 0.0;
  double gain_y = 0.0;
  DetectorChannel detector_x{};
  DetectorChannel detector_y{};
  double tau = 1e-3;
  double bandwidth = 100.0;

  void validate() const;
};

struct SpectrumCurve {
  std::vector<double> frequencies;
  std::vector<double> values_x;
  std::vector<double> values_y;
};

inline constexpr double kInfiniteTheta =
    std::numeric_limits<double>::infinity();

double theta_from_efficiency(double efficiency);

// Photocurrent spectrum of homodyne detection: eps*S + (1 - eps).
double homodyne_spectrum(double efficiency, double field_spectrum);

// Zero-frequency in-loop spectrum (L + g^2 theta) / (1 - g)^2.
double inloop_spectrum_broadband(double L, double gain, double theta);

// Gain minimizing the broadband in-loop spectrum: -L/theta.
// theta = 0 (perfect detector) has no finite minimizer.
double optimal_gain(double L, double theta);

// Broadband spectrum at the optimal gain: L / (1 + L/theta).
double min_inloop_spectrum(double L, double theta);

// Fourier transform of the loop response with convention
// h~(w) = int_0^inf h(s) e^{iws} ds, so h~(0) = 1.
std::complex<double> loop_filter_response(double omega, double bandwidth);

// Frequency-resolved in-loop spectrum
//   [S0 + theta g^2 |h~|^2] / |1 - g e^{i w tau} h~(w)|^2.
// s0 is the input quadrature spectrum at this frequency.
double inloop_spectrum_full(double omega, double s0, double gain, double theta,
                            double tau, double bandwidth);

// True when the broadband formula is evaluated outside the regime the
// stability analysis in the loop simulator can certify a priori.
bool gain_potentially_unstable(double gain);

struct DualSquashResult {
  double sx;
  double sy;
  double sum;
};

// Vacuum input, both quadratures measured and squashed at optimal gain:
// Sx = 1 - eps_x, Sy = 1 - eps_y.
DualSquashResult dual_squash_sum(double eps_x, double eps_y);

struct SqueezeSquashResult {
  double sx;
  double sy;
  double sum;
};

// Squeezed input (X at L), all detection on Y (eps_x = 0), Y squashed at
// optimal gain: Sx = L, Sy = (1/L) / (1 + (1/L)/theta).
SqueezeSquashResult squeeze_squash_pair(double L, double eps_y);

enum class UncertaintyClass {
  kFreeFieldLegal,
  kSquashedViolation,
};

struct UncertaintyResult {
  double product;
  UncertaintyClass classification;
};

// Sx*Sy against the free-field bound Sx*Sy >= 1.
UncertaintyResult uncertainty_product(double sx, double sy);

}  // namespace squashlab::spectra
