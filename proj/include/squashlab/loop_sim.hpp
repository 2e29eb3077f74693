#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "squashlab/spectra.hpp"

namespace squashlab::loopsim {

// Sampled in-loop quadrature record. The continuum white-noise processes are
// represented by Gaussian samples of variance (spectral density)/dt.
struct TimeSeries {
  double dt = 0.0;
  std::vector<double> samples;
};

struct SimulationConfig {
  spectra::FeedbackConfig feedback{};
  spectra::SqueezedInput input{};
  double dt = 1e-4;
  std::size_t n_samples = std::size_t{1} << 22;
  std::uint64_t seed = 1;
  std::size_t warmup = 0;  // 0 selects ten filter time constants
  bool allow_unstable = false;

  std::size_t effective_warmup() const;
  std::size_t delay_steps() const;
  void validate() const;
};

struct SimulationResult {
  TimeSeries x;
  TimeSeries y;
};

enum class Stability {
  kStable,
  kMarginal,
  kUnstable,
};

const char* to_string(Stability s);

// Nyquist-style test of the loop characteristic 1 - g e^{iw tau} h~(w):
// winding of the characteristic over a dense frequency grid detects
// right-half-plane closed-loop poles; a near-vanishing characteristic on the
// real-frequency axis is flagged marginal.
Stability stability_check(double gain, double tau, double bandwidth);

// Fixed standard-normal stream: Box-Muller over mt19937_64, so a seed pins
// the record bit-for-bit.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}
  double next();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Unit-variance noise records for a fully deterministic run; sized
// warmup + n_samples each.
struct LoopNoise {
  std::vector<double> input_x;
  std::vector<double> detector_x;
  std::vector<double> input_y;
  std::vector<double> detector_y;
};

LoopNoise draw_noise(const SimulationConfig& config);

// Per step n (per fed-back quadrature):
//   current  u[n] = X0[n] + chi[n] + sqrt(theta) xi[n]
//   filter   f[n+1] = f[n] + dt * bandwidth * (u[n] - f[n])
//   feedback chi[n] = g * f[n - delay_steps]
//   record   X1[n] = X0[n] + chi[n]
// with X0 ~ Normal(0, S0/dt) and xi ~ Normal(0, 1/dt).
SimulationResult simulate_loop(const SimulationConfig& config);

// Same recurrence driven by caller-supplied unit normals (test hook for
// causality and open-loop identities).
SimulationResult simulate_loop_with_noise(const SimulationConfig& config,
                                          const LoopNoise& noise);

}  // namespace squashlab::loopsim
