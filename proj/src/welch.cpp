#include "squashlab/welch.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "squashlab/errors.hpp"
#include "squashlab/fft.hpp"
#include "squashlab/kernels.hpp"

namespace squashlab::welch {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

SpectrumEstimate estimate_spectrum(const loopsim::TimeSeries& series,
                                   std::size_t segment_length,
                                   double overlap_fraction) {
  const std::size_t n = series.samples.size();
  if (!is_power_of_two(segment_length)) {
    throw DomainError("estimate_spectrum: segment length must be a power of two");
  }
  if (segment_length > n) {
    throw DomainError("estimate_spectrum: segment longer than record");
  }
  if (!(overlap_fraction >= 0.0) || !(overlap_fraction < 1.0)) {
    throw DomainError("estimate_spectrum: overlap must lie in [0, 1)");
  }
  if (!(series.dt > 0.0)) {
    throw DomainError("estimate_spectrum: series dt must be positive");
  }

  const kern::Ops& ops = kern::active_ops();
  const std::size_t m = segment_length;
  std::size_t hop = static_cast<std::size_t>(
      std::llround(static_cast<double>(m) * (1.0 - overlap_fraction)));
  if (hop == 0) hop = 1;

  // Periodic Hann window; the normalization sum_w^2 cancels the window's
  // power loss for any window choice.
  std::vector<double> window(m);
  for (std::size_t i = 0; i < m; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                      static_cast<double>(i) /
                                      static_cast<double>(m)));
  }
  const double window_power = ops.sum_squares(window.data(), m);

  const kern::Fft fft(m, ops);
  const std::size_t n_bins = m / 2 + 1;
  std::vector<double> windowed(m);
  std::vector<std::complex<double>> buffer(m);
  std::vector<double> power(n_bins, 0.0);

  std::size_t segments = 0;
  for (std::size_t start = 0; start + m <= n; start += hop) {
    ops.multiply(series.samples.data() + start, window.data(),
                 windowed.data(), m);
    for (std::size_t i = 0; i < m; ++i) buffer[i] = windowed[i];
    fft.forward(buffer.data());
    ops.accumulate_abs2(buffer.data(), power.data(), n_bins);
    ++segments;
  }

  SpectrumEstimate out;
  out.segments = segments;
  out.frequencies.resize(n_bins);
  out.estimates.resize(n_bins);
  out.standard_errors.resize(n_bins);
  const double norm = series.dt /
                      (window_power * static_cast<double>(segments));
  const double inv_sqrt_segments =
      1.0 / std::sqrt(static_cast<double>(segments));
  for (std::size_t j = 0; j < n_bins; ++j) {
    out.frequencies[j] = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         (static_cast<double>(m) * series.dt);
    out.estimates[j] = power[j] * norm;
    out.standard_errors[j] = out.estimates[j] * inv_sqrt_segments;
  }
  return out;
}

double analytic_inloop_spectrum(const loopsim::SimulationConfig& config,
                                char quadrature, double omega) {
  const bool is_x = quadrature == 'x' || quadrature == 'X';
  const double s0 =
      is_x ? config.input.spectrum_x() : config.input.spectrum_y();
  const double gain = is_x ? config.feedback.gain_x : config.feedback.gain_y;
  const spectra::DetectorChannel& det =
      is_x ? config.feedback.detector_x : config.feedback.detector_y;
  if (gain == 0.0) return s0;
  return spectra::inloop_spectrum_full(omega, s0, gain, det.theta(),
                                       config.feedback.tau,
                                       config.feedback.bandwidth);
}

VerifyReport verify_against_analytic(const loopsim::SimulationConfig& config,
                                     std::size_t segment_length,
                                     double overlap_fraction, double band_min,
                                     double band_max, char quadrature) {
  if (quadrature != 'x' && quadrature != 'X' && quadrature != 'y' &&
      quadrature != 'Y') {
    throw DomainError("verify_against_analytic: quadrature must be x or y");
  }
  if (!(band_min <= band_max)) {
    throw DomainError("verify_against_analytic: empty band");
  }
  const loopsim::SimulationResult run = loopsim::simulate_loop(config);
  const loopsim::TimeSeries& series =
      (quadrature == 'x' || quadrature == 'X') ? run.x : run.y;
  const SpectrumEstimate est =
      estimate_spectrum(series, segment_length, overlap_fraction);

  VerifyReport report;
  std::size_t within = 0;
  for (std::size_t j = 0; j < est.frequencies.size(); ++j) {
    const double w = est.frequencies[j];
    if (w < band_min || w > band_max) continue;
    const double expected = analytic_inloop_spectrum(config, quadrature, w);
    const double dev = std::abs(est.estimates[j] - expected);
    report.max_rel_deviation =
        std::max(report.max_rel_deviation, dev / expected);
    if (dev <= 3.0 * est.standard_errors[j]) ++within;
    report.frequencies.push_back(w);
    report.estimates.push_back(est.estimates[j]);
    report.standard_errors.push_back(est.standard_errors[j]);
    report.analytic.push_back(expected);
    ++report.bins_compared;
  }
  if (report.bins_compared == 0) {
    throw DomainError("verify_against_analytic: no estimator bins in band");
  }
  report.fraction_within_3se = static_cast<double>(within) /
                               static_cast<double>(report.bins_compared);
  return report;
}

}  // namespace squashlab::welch
