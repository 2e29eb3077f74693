#include "squashlab/spectra.hpp"

#include <cmath>
#include <string>

#include "squashlab/errors.hpp"

namespace squashlab::spectra {

namespace {
// Everything here is exact closed-form arithmetic; the only tolerances are
// rounding guards.
constexpr double kUncertaintyTol = 1e-9;     // relative, for classification
constexpr double kResonanceTol = 1e-9;       // |denominator| floor
}  // namespace

void SqueezedInput::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError("SqueezedInput: L must be positive and finite");
  }
}

void DetectorChannel::validate() const {
  if (!(efficiency >= 0.0) || !(efficiency <= 1.0)) {
    throw DomainError("DetectorChannel: efficiency must lie in [0, 1]");
  }
}

double DetectorChannel::theta() const {
  validate();
  return theta_from_efficiency(efficiency);
}

void FeedbackConfig::validate() const {
  detector_x.validate();
  detector_y.validate();
  if (gain_x == 1.0 || gain_y == 1.0) {
    throw DomainError("FeedbackConfig: round-loop gain 1 is singular");
  }
  if (detector_x.efficiency + detector_y.efficiency > 1.0) {
    throw DomainError(
        "FeedbackConfig: infeasible detection, epsilon_x + epsilon_y > 1");
  }
  if (detector_x.absent() && gain_x != 0.0) {
    throw DomainError("FeedbackConfig: gain_x requires epsilon_x > 0");
  }
  if (detector_y.absent() && gain_y != 0.0) {
    throw DomainError("FeedbackConfig: gain_y requires epsilon_y > 0");
  }
  if (!(tau >= 0.0)) {
    throw DomainError("FeedbackConfig: tau must be >= 0");
  }
  if (!(bandwidth > 0.0)) {
    throw DomainError("FeedbackConfig: bandwidth must be > 0");
  }
}

double theta_from_efficiency(double efficiency) {
  if (!(efficiency >= 0.0) || !(efficiency <= 1.0)) {
    throw DomainError("theta_from_efficiency: efficiency must lie in [0, 1]");
  }
  if (efficiency == 0.0) return kInfiniteTheta;
  return 1.0 / efficiency - 1.0;
}

double homodyne_spectrum(double efficiency, double field_spectrum) {
  if (!(efficiency >= 0.0) || !(efficiency <= 1.0)) {
    throw DomainError("homodyne_spectrum: efficiency must lie in [0, 1]");
  }
  if (!(field_spectrum > 0.0)) {
    throw DomainError("homodyne_spectrum: field spectrum must be positive");
  }
  return efficiency * field_spectrum + (1.0 - efficiency);
}

double inloop_spectrum_broadband(double L, double gain, double theta) {
  if (!(L > 0.0)) {
    throw DomainError("inloop_spectrum_broadband: L must be positive");
  }
  if (!(theta >= 0.0)) {
    throw DomainError("inloop_spectrum_broadband: theta must be >= 0");
  }
  if (gain == 1.0) {
    throw DomainError("inloop_spectrum_broadband: gain 1 is singular");
  }
  if (std::isinf(theta)) {
    // Uninformative detector: only the open loop is meaningful.
    if (gain == 0.0) return L;
    return std::numeric_limits<double>::infinity();
  }
  const double one_minus_g = 1.0 - gain;
  return (L + gain * gain * theta) / (one_minus_g * one_minus_g);
}

double optimal_gain(double L, double theta) {
  if (!(L > 0.0)) {
    throw DomainError("optimal_gain: L must be positive");
  }
  if (!(theta >= 0.0)) {
    throw DomainError("optimal_gain: theta must be >= 0");
  }
  if (theta == 0.0) {
    throw UnboundedGainError(
        "optimal_gain: perfect detector, optimal gain is unbounded");
  }
  if (std::isinf(theta)) return 0.0;
  return -L / theta;
}

double min_inloop_spectrum(double L, double theta) {
  if (!(L > 0.0)) {
    throw DomainError("min_inloop_spectrum: L must be positive");
  }
  if (!(theta >= 0.0)) {
    throw DomainError("min_inloop_spectrum: theta must be >= 0");
  }
  if (std::isinf(theta)) return L;
  if (theta == 0.0) return 0.0;
  return L / (1.0 + L / theta);
}

std::complex<double> loop_filter_response(double omega, double bandwidth) {
  if (!(bandwidth > 0.0)) {
    throw DomainError("loop_filter_response: bandwidth must be > 0");
  }
  return bandwidth / std::complex<double>(bandwidth, -omega);
}

double inloop_spectrum_full(double omega, double s0, double gain, double theta,
                            double tau, double bandwidth) {
  if (!(s0 > 0.0)) {
    throw DomainError("inloop_spectrum_full: input spectrum must be positive");
  }
  if (!(theta >= 0.0)) {
    throw DomainError("inloop_spectrum_full: theta must be >= 0");
  }
  if (!(tau >= 0.0)) {
    throw DomainError("inloop_spectrum_full: tau must be >= 0");
  }
  if (gain == 0.0) return s0;  // open loop, detector noise never feeds back
  if (std::isinf(theta)) {
    return std::numeric_limits<double>::infinity();
  }
  const std::complex<double> h = loop_filter_response(omega, bandwidth);
  const std::complex<double> phase{std::cos(omega * tau),
                                   std::sin(omega * tau)};
  const std::complex<double> denom = 1.0 - gain * phase * h;
  const double denom_abs = std::abs(denom);
  if (denom_abs < kResonanceTol) {
    throw LoopResonanceError(
        "inloop_spectrum_full: loop resonance at omega = " +
        std::to_string(omega));
  }
  const double h2 = std::norm(h);
  return (s0 + theta * gain * gain * h2) / (denom_abs * denom_abs);
}

bool gain_potentially_unstable(double gain) { return std::abs(gain) >= 1.0; }

DualSquashResult dual_squash_sum(double eps_x, double eps_y) {
  if (!(eps_x >= 0.0) || !(eps_y >= 0.0)) {
    throw DomainError("dual_squash_sum: efficiencies must be >= 0");
  }
  if (eps_x + eps_y > 1.0) {
    throw DomainError(
        "dual_squash_sum: infeasible detection, epsilon_x + epsilon_y > 1");
  }
  const double sx = min_inloop_spectrum(1.0, theta_from_efficiency(eps_x));
  const double sy = min_inloop_spectrum(1.0, theta_from_efficiency(eps_y));
  return {sx, sy, sx + sy};
}

SqueezeSquashResult squeeze_squash_pair(double L, double eps_y) {
  if (!(L > 0.0)) {
    throw DomainError("squeeze_squash_pair: L must be positive");
  }
  if (!(eps_y >= 0.0) || !(eps_y <= 1.0)) {
    throw DomainError("squeeze_squash_pair: efficiency must lie in [0, 1]");
  }
  const double sx = L;  // epsilon_x = 0, X loop open
  const double sy =
      min_inloop_spectrum(1.0 / L, theta_from_efficiency(eps_y));
  return {sx, sy, sx + sy};
}

UncertaintyResult uncertainty_product(double sx, double sy) {
  if (!(sx > 0.0) || !(sy > 0.0)) {
    throw DomainError("uncertainty_product: spectra must be positive");
  }
  const double product = sx * sy;
  const UncertaintyClass cls = product < 1.0 - kUncertaintyTol
                                   ? UncertaintyClass::kSquashedViolation
                                   : UncertaintyClass::kFreeFieldLegal;
  return {product, cls};
}

}  // namespace squashlab::spectra
