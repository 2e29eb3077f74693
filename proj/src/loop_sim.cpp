#include "squashlab/loop_sim.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "squashlab/errors.hpp"

namespace squashlab::loopsim {

namespace {

constexpr double kMarginalTol = 1e-3;
constexpr double kDivergenceFactor = 1e6;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::kStable:
      return "stable";
    case Stability::kMarginal:
      return "marginal";
    case Stability::kUnstable:
      return "unstable";
  }
  return "unknown";
}

std::size_t SimulationConfig::effective_warmup() const {
  if (warmup != 0) return warmup;
  return static_cast<std::size_t>(
      std::ceil(10.0 / (feedback.bandwidth * dt)));
}

std::size_t SimulationConfig::delay_steps() const {
  return static_cast<std::size_t>(std::llround(feedback.tau / dt));
}

void SimulationConfig::validate() const {
  feedback.validate();
  input.validate();
  if (!(dt > 0.0)) {
    throw DomainError("SimulationConfig: dt must be > 0");
  }
  if (feedback.tau > 0.0 && dt > feedback.tau / 10.0 * (1.0 + 1e-12)) {
    throw DomainError("SimulationConfig: dt must resolve the delay, dt <= tau/10");
  }
  if (dt > 0.1 / feedback.bandwidth * (1.0 + 1e-12)) {
    throw DomainError(
        "SimulationConfig: dt must resolve the filter, dt <= 0.1/bandwidth");
  }
  if (!is_power_of_two(n_samples)) {
    throw DomainError("SimulationConfig: n_samples must be a power of two");
  }
  const std::size_t floor_steps = static_cast<std::size_t>(
      std::ceil(10.0 / (feedback.bandwidth * dt)));
  if (warmup != 0 && warmup < floor_steps) {
    throw DomainError(
        "SimulationConfig: warmup must cover ten filter time constants");
  }
}

Stability stability_check(double gain, double tau, double bandwidth) {
  if (gain == 1.0) {
    throw DomainError("stability_check: gain 1 is singular");
  }
  if (!(bandwidth > 0.0)) {
    throw DomainError("stability_check: bandwidth must be > 0");
  }
  if (!(tau >= 0.0)) {
    throw DomainError("stability_check: tau must be >= 0");
  }
  if (gain == 0.0) return Stability::kStable;

  // Characteristic F(iw) = 1 - g e^{-iw tau} H(iw), H(s) = bw/(bw + s),
  // traversed up the imaginary axis. The open loop has no right-half-plane
  // pole, so net clockwise encirclements of the origin equal the number of
  // unstable closed-loop poles.
  const double w_max = 100.0 * bandwidth;
  double dw = bandwidth / 2000.0;
  if (tau > 0.0) dw = std::min(dw, 1.0 / (50.0 * tau));
  const std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * w_max / dw));

  const auto characteristic = [&](double w) {
    const std::complex<double> h = bandwidth / std::complex<double>(bandwidth, w);
    const std::complex<double> delay{std::cos(w * tau), -std::sin(w * tau)};
    return 1.0 - gain * delay * h;
  };

  double winding = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  std::complex<double> prev = characteristic(-w_max);
  min_abs = std::min(min_abs, std::abs(prev));
  for (std::size_t k = 1; k <= n; ++k) {
    const double w = -w_max + 2.0 * w_max * static_cast<double>(k) /
                                 static_cast<double>(n);
    const std::complex<double> cur = characteristic(w);
    min_abs = std::min(min_abs, std::abs(cur));
    winding += std::arg(cur / prev);
    prev = cur;
  }
  const long encirclements =
      std::lround(-winding / (2.0 * std::numbers::pi));
  if (encirclements > 0) return Stability::kUnstable;
  if (min_abs <= kMarginalTol * (1.0 + 1e-9)) return Stability::kMarginal;
  return Stability::kStable;
}

double GaussianRng::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms; u1 in (0, 1] keeps the log finite.
  const double u1 =
      (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53;
  const double u2 = static_cast<double>(gen_() >> 11) * 0x1p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

LoopNoise draw_noise(const SimulationConfig& config) {
  const std::size_t total = config.effective_warmup() + config.n_samples;
  LoopNoise noise;
  noise.input_x.resize(total);
  noise.detector_x.resize(total);
  noise.input_y.resize(total);
  noise.detector_y.resize(total);
  GaussianRng rng(config.seed);
  for (std::size_t i = 0; i < total; ++i) {
    noise.input_x[i] = rng.next();
    noise.detector_x[i] = rng.next();
    noise.input_y[i] = rng.next();
    noise.detector_y[i] = rng.next();
  }
  return noise;
}

namespace {

struct ChannelSetup {
  bool closed = false;
  double gain = 0.0;
  double sqrt_theta = 0.0;
  double input_sigma = 0.0;     // sqrt(S0/dt)
  double detector_sigma = 0.0;  // sqrt(1/dt)
  double divergence_limit = 0.0;
  char label = 'x';
};

ChannelSetup make_channel(char label, double gain,
                          const spectra::DetectorChannel& det, double s0,
                          double dt) {
  ChannelSetup ch;
  ch.label = label;
  ch.gain = gain;
  ch.closed = gain != 0.0;
  if (ch.closed) {
    ch.sqrt_theta = std::sqrt(det.theta());
  }
  ch.input_sigma = std::sqrt(s0 / dt);
  ch.detector_sigma = std::sqrt(1.0 / dt);
  ch.divergence_limit = kDivergenceFactor * ch.input_sigma;
  return ch;
}

// One quadrature's loop. The filter history lives in a circular buffer so
// chi[n] can read the output delay_steps back.
void run_channel(const ChannelSetup& ch, const SimulationConfig& config,
                 const std::vector<double>& input_noise,
                 const std::vector<double>& detector_noise,
                 std::vector<double>& record) {
  const std::size_t warmup = config.effective_warmup();
  const std::size_t total = warmup + config.n_samples;
  record.resize(config.n_samples);

  if (!ch.closed) {
    for (std::size_t n = warmup; n < total; ++n) {
      record[n - warmup] = ch.input_sigma * input_noise[n];
    }
    return;
  }

  const double alpha = config.dt * config.feedback.bandwidth;
  const std::size_t delay = config.delay_steps();
  std::vector<double> filter_history(delay + 1, 0.0);
  std::size_t head = 0;  // slot holding f[n]
  double filter_state = 0.0;

  for (std::size_t n = 0; n < total; ++n) {
    filter_history[head] = filter_state;
    // f[n - delay]: the oldest slot in the circular buffer.
    const std::size_t tail = (head + 1) % (delay + 1);
    const double chi =
        n >= delay ? ch.gain * filter_history[delay == 0 ? head : tail] : 0.0;
    const double x0 = ch.input_sigma * input_noise[n];
    const double sample = x0 + chi;
    if (std::abs(sample) > ch.divergence_limit) {
      throw InstabilityError(
          std::string("simulate_loop: quadrature ") + ch.label +
          " diverged at step " + std::to_string(n));
    }
    if (n >= warmup) record[n - warmup] = sample;
    const double current =
        x0 + chi + ch.sqrt_theta * ch.detector_sigma * detector_noise[n];
    filter_state += alpha * (current - filter_state);
    head = tail;
  }
}

SimulationResult run_loop(const SimulationConfig& config,
                          const LoopNoise& noise) {
  const ChannelSetup cx =
      make_channel('x', config.feedback.gain_x, config.feedback.detector_x,
                   config.input.spectrum_x(), config.dt);
  const ChannelSetup cy =
      make_channel('y', config.feedback.gain_y, config.feedback.detector_y,
                   config.input.spectrum_y(), config.dt);

  SimulationResult result;
  result.x.dt = config.dt;
  result.y.dt = config.dt;
  run_channel(cx, config, noise.input_x, noise.detector_x, result.x.samples);
  run_channel(cy, config, noise.input_y, noise.detector_y, result.y.samples);
  return result;
}

void check_stability_or_throw(const SimulationConfig& config) {
  if (config.allow_unstable) return;
  for (const auto& [gain, label] :
       {std::pair{config.feedback.gain_x, 'x'},
        std::pair{config.feedback.gain_y, 'y'}}) {
    if (gain == 0.0) continue;
    if (stability_check(gain, config.feedback.tau,
                        config.feedback.bandwidth) == Stability::kUnstable) {
      throw InstabilityError(
          std::string("simulate_loop: ") + label +
          " loop is unstable (set allow_unstable to run anyway)");
    }
  }
}

}  // namespace

SimulationResult simulate_loop(const SimulationConfig& config) {
  config.validate();
  check_stability_or_throw(config);
  return run_loop(config, draw_noise(config));
}

SimulationResult simulate_loop_with_noise(const SimulationConfig& config,
                                          const LoopNoise& noise) {
  config.validate();
  check_stability_or_throw(config);
  const std::size_t total = config.effective_warmup() + config.n_samples;
  if (noise.input_x.size() < total || noise.detector_x.size() < total ||
      noise.input_y.size() < total || noise.detector_y.size() < total) {
    throw DomainError("simulate_loop_with_noise: noise records too short");
  }
  return run_loop(config, noise);
}

}  // namespace squashlab::loopsim
