#include "squashlab/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "squashlab/bloch.hpp"
#include "squashlab/errors.hpp"
#include "squashlab/liouville.hpp"
#include "squashlab/loop_sim.hpp"
#include "squashlab/spectra.hpp"
#include "squashlab/verify.hpp"
#include "squashlab/welch.hpp"

namespace squashlab::cli {

namespace {

double parse_double(const std::string& value, const std::string& key,
                    int line) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw DomainError("config line " + std::to_string(line) +
                      ": malformed number for '" + key + "': " + value);
  }
  return out;
}

std::uint64_t parse_uint(const std::string& value, const std::string& key,
                         int line) {
  std::uint64_t out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw DomainError("config line " + std::to_string(line) +
                      ": malformed integer for '" + key + "': " + value);
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& key, int line) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw DomainError("config line " + std::to_string(line) +
                    ": malformed boolean for '" + key + "': " + value);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open config file: " + path);
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw DomainError("config line " + std::to_string(line_no) +
                        ": empty key");
    }
    // Line numbers travel with the entries via this encoding.
    entries.emplace_back(key, std::to_string(line_no) + ":" + value);
  }
  return entries;
}

void apply_config_entry(ScenarioConfig& config, const std::string& key,
                        const std::string& value, int line) {
  if (key == "mode") {
    config.mode = value;
  } else if (key == "out") {
    config.out = value;
  } else if (key == "seed") {
    config.seed = parse_uint(value, key, line);
  } else if (key == "L") {
    config.L = parse_double(value, key, line);
  } else if (key == "eta") {
    config.eta = parse_double(value, key, line);
  } else if (key == "g_x") {
    config.gain_x = parse_double(value, key, line);
  } else if (key == "g_y") {
    config.gain_y = parse_double(value, key, line);
  } else if (key == "epsilon_x") {
    config.eps_x = parse_double(value, key, line);
  } else if (key == "epsilon_y") {
    config.eps_y = parse_double(value, key, line);
  } else if (key == "tau") {
    config.tau = parse_double(value, key, line);
  } else if (key == "bandwidth") {
    config.bandwidth = parse_double(value, key, line);
  } else if (key == "dt") {
    config.dt = parse_double(value, key, line);
  } else if (key == "samples") {
    config.samples = parse_uint(value, key, line);
  } else if (key == "omega_min") {
    config.omega_min = parse_double(value, key, line);
  } else if (key == "omega_max") {
    config.omega_max = parse_double(value, key, line);
  } else if (key == "n_bins") {
    config.n_bins = parse_uint(value, key, line);
  } else if (key == "lambda_x") {
    config.lambda_x = parse_double(value, key, line);
  } else if (key == "lambda_y") {
    config.lambda_y = parse_double(value, key, line);
  } else if (key == "optimal_x") {
    config.optimal_x = parse_bool(value, key, line);
  } else if (key == "optimal_y") {
    config.optimal_y = parse_bool(value, key, line);
  } else if (key == "x0") {
    config.x0 = parse_double(value, key, line);
  } else if (key == "y0") {
    config.y0 = parse_double(value, key, line);
  } else if (key == "z0") {
    config.z0 = parse_double(value, key, line);
  } else if (key == "t_max") {
    config.t_max = parse_double(value, key, line);
  } else if (key == "segment_length") {
    config.segment_length = parse_uint(value, key, line);
  } else if (key == "overlap") {
    config.overlap = parse_double(value, key, line);
  } else if (key == "warmup") {
    config.warmup = parse_uint(value, key, line);
  } else if (key == "quadrature") {
    if (value != "x" && value != "y") {
      throw DomainError("config line " + std::to_string(line) +
                        ": quadrature must be x or y");
    }
    config.quadrature = value[0];
  } else if (key == "allow_unstable") {
    config.allow_unstable = parse_bool(value, key, line);
  } else {
    throw DomainError("config line " + std::to_string(line) +
                      ": unknown key '" + key + "'");
  }
}

namespace {

struct Streams {
  std::ostream* csv;
  std::ostream* log;
  std::ofstream file;
};

Streams open_streams(const ScenarioConfig& config) {
  Streams s{&std::cout, &std::cerr, {}};
  if (!config.out.empty()) {
    s.file.open(config.out);
    if (!s.file) {
      throw DomainError("cannot open output file: " + config.out);
    }
    s.csv = &s.file;
    s.log = &std::cout;
  }
  return s;
}

void echo_config(const ScenarioConfig& c, std::ostream& log) {
  log << "# mode = " << c.mode << "\n";
  log << "# seed = " << c.seed << "\n";
  log << "# L = " << format_value(c.L) << "\n";
  log << "# eta = " << format_value(c.eta) << "\n";
  log << "# epsilon_x = " << format_value(c.eps_x)
      << ", epsilon_y = " << format_value(c.eps_y) << "\n";
  log << "# tau = " << format_value(c.tau)
      << ", bandwidth = " << format_value(c.bandwidth)
      << ", dt = " << format_value(c.dt) << "\n";
}

std::vector<double> omega_grid(const ScenarioConfig& c) {
  if (c.n_bins == 0) {
    throw DomainError("n_bins must be >= 1");
  }
  if (!(c.omega_min <= c.omega_max)) {
    throw DomainError("omega_min must be <= omega_max");
  }
  std::vector<double> grid(c.n_bins);
  if (c.n_bins == 1) {
    grid[0] = c.omega_min;
    return grid;
  }
  const double step =
      (c.omega_max - c.omega_min) / static_cast<double>(c.n_bins - 1);
  for (std::size_t i = 0; i < c.n_bins; ++i) {
    grid[i] = c.omega_min + step * static_cast<double>(i);
  }
  return grid;
}

// Loop gain for one quadrature of the spectra/loop-sim modes. A measured
// channel without an explicit gain runs at its optimal (squashing) gain.
double resolve_gain(std::optional<double> explicit_gain, bool force_optimal,
                    double eps, double s0, const char* label) {
  if (eps == 0.0) {
    if (force_optimal) {
      throw DomainError(std::string("optimal gain requested on absent channel ") +
                        label + " (epsilon = 0)");
    }
    if (explicit_gain.has_value() && *explicit_gain != 0.0) {
      throw DomainError(std::string("gain on ") + label +
                        " requires epsilon > 0");
    }
    return 0.0;
  }
  const double theta = spectra::theta_from_efficiency(eps);
  if (explicit_gain.has_value() && !force_optimal) return *explicit_gain;
  if (theta == 0.0) {
    throw UnboundedGainError(
        std::string("epsilon = 1 on ") + label +
        " has unbounded optimal gain; pass an explicit gain");
  }
  return spectra::optimal_gain(s0, theta);
}

// Feedback parameters for the atom/fluorescence modes. Explicit lambdas win,
// then explicit gains, then the optimal lambda of any measured channel.
bloch::BathParams resolve_bath(const ScenarioConfig& c) {
  bloch::BathParams p;
  p.eta = c.eta;
  p.L = c.L;
  p.theta_x = spectra::theta_from_efficiency(c.eps_x);
  p.theta_y = spectra::theta_from_efficiency(c.eps_y);

  const auto resolve = [&](std::optional<double> lambda,
                           std::optional<double> gain, bool force_optimal,
                           double eps, double theta, double input_spectrum,
                           const char* label) {
    if (lambda.has_value() && !force_optimal) {
      if (eps == 0.0 && *lambda != 0.0) {
        throw DomainError(std::string("lambda on ") + label +
                          " requires epsilon > 0");
      }
      return *lambda;
    }
    if (eps == 0.0) {
      if (force_optimal) {
        throw DomainError(std::string("optimal feedback requested on absent channel ") +
                          label + " (epsilon = 0)");
      }
      if (gain.has_value() && *gain != 0.0) {
        throw DomainError(std::string("gain on ") + label +
                          " requires epsilon > 0");
      }
      return 0.0;
    }
    if (gain.has_value() && !force_optimal) {
      return bloch::BathParams::lambda_from_gain(c.eta, *gain);
    }
    // Optimal lambda minimizes this quadrature's dipole decay rate;
    // equivalently the in-loop spectrum of the conjugate input.
    return bloch::optimal_lambda_y(c.eta, 1.0 / input_spectrum, theta);
  };

  p.lambda_x = resolve(c.lambda_x, c.gain_x, c.optimal_x, c.eps_x, p.theta_x,
                       c.L, "x");
  p.lambda_y = resolve(c.lambda_y, c.gain_y, c.optimal_y, c.eps_y, p.theta_y,
                       1.0 / c.L, "y");
  p.validate();
  return p;
}

int run_spectra(const ScenarioConfig& c, std::ostream& csv,
                std::ostream& log) {
  spectra::SqueezedInput input{c.L};
  input.validate();
  if (c.eps_x + c.eps_y > 1.0) {
    throw DomainError("infeasible detection: epsilon_x + epsilon_y > 1");
  }
  const double gx =
      resolve_gain(c.gain_x, c.optimal_x, c.eps_x, input.spectrum_x(), "x");
  const double gy =
      resolve_gain(c.gain_y, c.optimal_y, c.eps_y, input.spectrum_y(), "y");
  const double theta_x = spectra::theta_from_efficiency(c.eps_x);
  const double theta_y = spectra::theta_from_efficiency(c.eps_y);

  for (const auto& [g, label] : {std::pair{gx, 'x'}, std::pair{gy, 'y'}}) {
    if (spectra::gain_potentially_unstable(g)) {
      log << "# warning: |g_" << label << "| >= 1, loop "
          << loopsim::to_string(
                 loopsim::stability_check(g, c.tau, c.bandwidth))
          << " by Nyquist check\n";
    }
  }
  log << "# g_x = " << format_value(gx) << ", g_y = " << format_value(gy)
      << "\n";

  csv << "omega,Sx,Sy,product,sum\n";
  for (const double w : omega_grid(c)) {
    const double sx =
        gx == 0.0 ? input.spectrum_x()
                  : spectra::inloop_spectrum_full(w, input.spectrum_x(), gx,
                                                  theta_x, c.tau, c.bandwidth);
    const double sy =
        gy == 0.0 ? input.spectrum_y()
                  : spectra::inloop_spectrum_full(w, input.spectrum_y(), gy,
                                                  theta_y, c.tau, c.bandwidth);
    csv << format_value(w) << ',' << format_value(sx) << ','
        << format_value(sy) << ',' << format_value(sx * sy) << ','
        << format_value(sx + sy) << "\n";
  }

  const double sx0 = gx == 0.0
                         ? input.spectrum_x()
                         : spectra::inloop_spectrum_broadband(
                               input.spectrum_x(), gx, theta_x);
  const double sy0 = gy == 0.0
                         ? input.spectrum_y()
                         : spectra::inloop_spectrum_broadband(
                               input.spectrum_y(), gy, theta_y);
  const auto unc = spectra::uncertainty_product(sx0, sy0);
  log << "# broadband: Sx = " << format_value(sx0)
      << ", Sy = " << format_value(sy0)
      << ", sum = " << format_value(sx0 + sy0)
      << ", product = " << format_value(unc.product) << " ("
      << (unc.classification == spectra::UncertaintyClass::kSquashedViolation
              ? "squashed-violation"
              : "free-field-legal")
      << ")\n";
  return 0;
}

int run_loop_sim(const ScenarioConfig& c, std::ostream& csv,
                 std::ostream& log) {
  loopsim::SimulationConfig sim;
  sim.input = spectra::SqueezedInput{c.L};
  sim.input.validate();
  sim.feedback.detector_x = spectra::DetectorChannel{c.eps_x};
  sim.feedback.detector_y = spectra::DetectorChannel{c.eps_y};
  sim.feedback.gain_x =
      resolve_gain(c.gain_x, c.optimal_x, c.eps_x, sim.input.spectrum_x(), "x");
  sim.feedback.gain_y =
      resolve_gain(c.gain_y, c.optimal_y, c.eps_y, sim.input.spectrum_y(), "y");
  sim.feedback.tau = c.tau;
  sim.feedback.bandwidth = c.bandwidth;
  sim.dt = c.dt;
  sim.n_samples = c.samples;
  sim.seed = c.seed;
  sim.warmup = c.warmup;
  sim.allow_unstable = c.allow_unstable;

  log << "# g_x = " << format_value(sim.feedback.gain_x)
      << ", g_y = " << format_value(sim.feedback.gain_y)
      << ", quadrature = " << c.quadrature << "\n";

  const welch::VerifyReport report = welch::verify_against_analytic(
      sim, c.segment_length, c.overlap, c.omega_min, c.omega_max,
      c.quadrature);

  csv << "omega,S_est,S_err,S_analytic\n";
  for (std::size_t j = 0; j < report.frequencies.size(); ++j) {
    csv << format_value(report.frequencies[j]) << ','
        << format_value(report.estimates[j]) << ','
        << format_value(report.standard_errors[j]) << ','
        << format_value(report.analytic[j]) << "\n";
  }

  log << "# bins = " << report.bins_compared
      << ", max relative deviation = "
      << format_value(report.max_rel_deviation)
      << ", fraction within 3 standard errors = "
      << format_value(report.fraction_within_3se) << "\n";
  return 0;
}

int run_atom(const ScenarioConfig& c, std::ostream& csv, std::ostream& log) {
  const bloch::BathParams p = resolve_bath(c);
  const bloch::BlochRates rates = bloch::rates_squashed(p);
  log << "# lambda_x = " << format_value(p.lambda_x)
      << ", lambda_y = " << format_value(p.lambda_y) << "\n";
  log << "# gamma_x = " << format_value(rates.gamma_x)
      << ", gamma_y = " << format_value(rates.gamma_y)
      << ", gamma_z = " << format_value(rates.gamma_z)
      << ", C = " << format_value(rates.pump) << "\n";
  if (rates.gamma_z > 0.0) {
    log << "# steady-state z = " << format_value(-rates.pump / rates.gamma_z)
        << "\n";
  } else {
    log << "# frozen atom: no relaxation\n";
  }

  const bloch::BlochState initial{c.x0, c.y0, c.z0};
  if (initial.norm_squared() > 1.0 + 1e-10) {
    throw DomainError("initial Bloch vector lies outside the unit sphere");
  }
  if (!(c.t_max >= 0.0)) {
    throw DomainError("t_max must be >= 0");
  }
  csv << "t,x,y,z\n";
  const std::size_t n = c.n_bins == 0 ? 1 : c.n_bins;
  for (std::size_t i = 0; i < n; ++i) {
    const double t =
        n == 1 ? 0.0
               : c.t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    const bloch::BlochState s = bloch::evolve_bloch(rates, initial, t);
    csv << format_value(t) << ',' << format_value(s.x) << ','
        << format_value(s.y) << ',' << format_value(s.z) << "\n";
  }
  return 0;
}

int run_fluorescence(const ScenarioConfig& c, std::ostream& csv,
                     std::ostream& log) {
  const bloch::BathParams p = resolve_bath(c);
  const bloch::BlochRates rates = bloch::rates_squashed(p);
  const std::vector<double> grid = omega_grid(c);

  const liouville::Liouvillian lv = liouville::build_squashed_me(p);
  const std::vector<double> regression =
      liouville::regression_spectrum(lv, p.eta, grid);

  csv << "omega,P_closed_form,P_regression,ratio\n";
  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double closed = bloch::fluorescence_spectrum(p.eta, rates, grid[i]);
    const double ratio =
        closed > 1e-300 ? regression[i] / closed
                        : std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(ratio)) {
      ratio_sum += ratio;
      ++ratio_count;
    }
    csv << format_value(grid[i]) << ',' << format_value(closed) << ','
        << format_value(regression[i]) << ',' << format_value(ratio) << "\n";
  }

  log << "# gamma_x = " << format_value(rates.gamma_x)
      << ", gamma_y = " << format_value(rates.gamma_y)
      << ", gamma_z = " << format_value(rates.gamma_z)
      << ", C = " << format_value(rates.pump) << "\n";
  log << "# lineshape FWHM = " << format_value(bloch::fluorescence_fwhm(rates))
      << "\n";
  if (ratio_count > 0) {
    // Reported, not asserted: regression vs printed-formula normalization.
    log << "# mean normalization ratio (regression / closed form) = "
        << format_value(ratio_sum / static_cast<double>(ratio_count)) << "\n";
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  ScenarioConfig config;
  CLI::App app{
      "squashlab: in-loop (squashed) light spectra, stochastic feedback-loop "
      "simulation, and two-level-atom response"};

  std::string mode;
  std::string config_path;
  std::string out_path;
  std::string quadrature = "x";
  std::uint64_t seed = 0;
  double gain_x = 0.0, gain_y = 0.0, lambda_x = 0.0, lambda_y = 0.0;

  app.add_option("--mode", mode,
                 "one of: spectra, loop-sim, atom, fluorescence, verify");
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_option("--seed", seed, "random seed (env SQUASHLAB_SEED fallback)");
  app.add_option("--L", config.L, "input X-quadrature squeezing factor");
  app.add_option("--eta", config.eta, "atom/beam mode matching");
  app.add_option("--gx", gain_x, "X round-loop gain");
  app.add_option("--gy", gain_y, "Y round-loop gain");
  app.add_option("--ex", config.eps_x, "X homodyne efficiency");
  app.add_option("--ey", config.eps_y, "Y homodyne efficiency");
  app.add_option("--tau", config.tau, "loop delay");
  app.add_option("--bandwidth", config.bandwidth, "loop filter bandwidth");
  app.add_option("--dt", config.dt, "simulation time step");
  app.add_option("--samples", config.samples,
                 "simulation record length (power of two)");
  app.add_option("--omega-min", config.omega_min, "grid lower edge");
  app.add_option("--omega-max", config.omega_max, "grid upper edge");
  app.add_option("--n-bins", config.n_bins, "grid points");
  app.add_option("--lambda-x", lambda_x, "X feedback parameter (atom modes)");
  app.add_option("--lambda-y", lambda_y, "Y feedback parameter (atom modes)");
  app.add_flag("--optimal-x", config.optimal_x, "force optimal X feedback");
  app.add_flag("--optimal-y", config.optimal_y, "force optimal Y feedback");
  app.add_option("--x0", config.x0, "initial Bloch x");
  app.add_option("--y0", config.y0, "initial Bloch y");
  app.add_option("--z0", config.z0, "initial Bloch z");
  app.add_option("--t-max", config.t_max, "trajectory end time");
  app.add_option("--segment-length", config.segment_length,
                 "Welch segment length (power of two)");
  app.add_option("--overlap", config.overlap, "Welch overlap fraction");
  app.add_option("--warmup", config.warmup,
                 "discarded steps (0 = ten filter time constants)");
  app.add_option("--quadrature", quadrature, "record to analyze: x or y");
  app.add_flag("--allow-unstable", config.allow_unstable,
               "run the simulation even if the Nyquist check fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    // Precedence: command line > config file > SQUASHLAB_SEED > defaults.
    if (const char* env = std::getenv("SQUASHLAB_SEED"); env != nullptr) {
      config.seed = parse_uint(env, "SQUASHLAB_SEED", 0);
    }
    if (app.count("--config") > 0) {
      ScenarioConfig from_file;
      for (const auto& [key, tagged] : read_config_file(config_path)) {
        const auto colon = tagged.find(':');
        const int line = std::stoi(tagged.substr(0, colon));
        apply_config_entry(from_file, key, tagged.substr(colon + 1), line);
        const bool flag_given =
            (key == "mode" && !mode.empty()) ||
            (key == "out" && app.count("--out") > 0) ||
            (key == "seed" && app.count("--seed") > 0) ||
            (key == "L" && app.count("--L") > 0) ||
            (key == "eta" && app.count("--eta") > 0) ||
            (key == "g_x" && app.count("--gx") > 0) ||
            (key == "g_y" && app.count("--gy") > 0) ||
            (key == "epsilon_x" && app.count("--ex") > 0) ||
            (key == "epsilon_y" && app.count("--ey") > 0) ||
            (key == "tau" && app.count("--tau") > 0) ||
            (key == "bandwidth" && app.count("--bandwidth") > 0) ||
            (key == "dt" && app.count("--dt") > 0) ||
            (key == "samples" && app.count("--samples") > 0) ||
            (key == "omega_min" && app.count("--omega-min") > 0) ||
            (key == "omega_max" && app.count("--omega-max") > 0) ||
            (key == "n_bins" && app.count("--n-bins") > 0) ||
            (key == "lambda_x" && app.count("--lambda-x") > 0) ||
            (key == "lambda_y" && app.count("--lambda-y") > 0) ||
            (key == "optimal_x" && app.count("--optimal-x") > 0) ||
            (key == "optimal_y" && app.count("--optimal-y") > 0) ||
            (key == "x0" && app.count("--x0") > 0) ||
            (key == "y0" && app.count("--y0") > 0) ||
            (key == "z0" && app.count("--z0") > 0) ||
            (key == "t_max" && app.count("--t-max") > 0) ||
            (key == "segment_length" && app.count("--segment-length") > 0) ||
            (key == "overlap" && app.count("--overlap") > 0) ||
            (key == "warmup" && app.count("--warmup") > 0) ||
            (key == "quadrature" && app.count("--quadrature") > 0) ||
            (key == "allow_unstable" && app.count("--allow-unstable") > 0);
        if (!flag_given) {
          apply_config_entry(config, key, tagged.substr(colon + 1), line);
        }
      }
    }

    if (!mode.empty()) config.mode = mode;
    if (app.count("--out") > 0) config.out = out_path;
    if (app.count("--gx") > 0) config.gain_x = gain_x;
    if (app.count("--gy") > 0) config.gain_y = gain_y;
    if (app.count("--lambda-x") > 0) config.lambda_x = lambda_x;
    if (app.count("--lambda-y") > 0) config.lambda_y = lambda_y;
    if (app.count("--quadrature") > 0) {
      if (quadrature != "x" && quadrature != "y") {
        throw DomainError("quadrature must be x or y");
      }
      config.quadrature = quadrature[0];
    }
    if (app.count("--seed") > 0) config.seed = seed;

    if (config.mode.empty()) {
      throw DomainError(
          "no mode given; use --mode spectra|loop-sim|atom|fluorescence|verify");
    }

    if (config.mode == "verify") {
      return verify::run_all(std::cout) ? 0 : 2;
    }

    Streams streams = open_streams(config);
    echo_config(config, *streams.log);
    if (config.mode == "spectra") {
      return run_spectra(config, *streams.csv, *streams.log);
    }
    if (config.mode == "loop-sim") {
      return run_loop_sim(config, *streams.csv, *streams.log);
    }
    if (config.mode == "atom") {
      return run_atom(config, *streams.csv, *streams.log);
    }
    if (config.mode == "fluorescence") {
      return run_fluorescence(config, *streams.csv, *streams.log);
    }
    throw DomainError("unknown mode '" + config.mode + "'");
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace squashlab::cli
