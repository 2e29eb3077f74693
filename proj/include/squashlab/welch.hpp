#pragma once

#include <cstddef>
#include <vector>

#include "squashlab/loop_sim.hpp"

namespace squashlab::welch {

// Two-sided spectral density estimate on angular frequencies
// w_j = 2 pi j / (segment_length * dt), j = 0 .. segment_length/2.
// Normalized so an uncorrelated Normal(0, v/dt) record estimates to v.
struct SpectrumEstimate {
  std::vector<double> frequencies;
  std::vector<double> estimates;
  std::vector<double> standard_errors;  // estimate / sqrt(segments)
  std::size_t segments = 0;
};

// Welch-averaged periodogram with a Hann window.
SpectrumEstimate estimate_spectrum(const loopsim::TimeSeries& series,
                                   std::size_t segment_length,
                                   double overlap_fraction);

struct VerifyReport {
  double max_rel_deviation = 0.0;
  double fraction_within_3se = 0.0;
  std::size_t bins_compared = 0;
  // Parallel arrays restricted to the compared band.
  std::vector<double> frequencies;
  std::vector<double> estimates;
  std::vector<double> standard_errors;
  std::vector<double> analytic;
};

// Simulates the loop, estimates the requested quadrature's spectrum and
// compares bin-by-bin against the closed-form in-loop spectrum over
// [band_min, band_max].
VerifyReport verify_against_analytic(const loopsim::SimulationConfig& config,
                                     std::size_t segment_length,
                                     double overlap_fraction, double band_min,
                                     double band_max, char quadrature = 'x');

// Closed-form curve the estimate is compared against.
double analytic_inloop_spectrum(const loopsim::SimulationConfig& config,
                                char quadrature, double omega);

}  // namespace squashlab::welch
