#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace squashlab::cli {

// Effective parameters of one invocation. Flags override config-file values;
// unset gains resolve to the optimal gain of any measured channel.
struct ScenarioConfig {
  std::string mode;
  std::string out;  // empty: CSV to stdout, summary to stderr
  std::uint64_t seed = 1;

  double L = 1.0;
  double eta = 1.0;
  std::optional<double> gain_x;
  std::optional<double> gain_y;
  double eps_x = 0.5;
  double eps_y = 0.0;
  double tau = 1e-3;
  double bandwidth = 100.0;
  double dt = 1e-4;
  std::size_t samples = std::size_t{1} << 22;
  double omega_min = 0.0;
  double omega_max = 10.0;
  std::size_t n_bins = 501;

  std::optional<double> lambda_x;
  std::optional<double> lambda_y;
  bool optimal_x = false;
  bool optimal_y = false;

  double x0 = 0.0;
  double y0 = 0.0;
  double z0 = 1.0;
  double t_max = 10.0;

  std::size_t segment_length = std::size_t{1} << 15;
  double overlap = 0.5;
  std::size_t warmup = 0;
  char quadrature = 'x';
  bool allow_unstable = false;
};

// Parses the flat `key = value` file (# comments). Returned pairs preserve
// file order; errors carry the line number.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path);

// Applies one config entry; throws DomainError for unknown keys or
// malformed numbers.
void apply_config_entry(ScenarioConfig& config, const std::string& key,
                        const std::string& value, int line);

// Full front end: returns the process exit status
// (0 ok, 1 validation error, 2 numerical failure).
int run(int argc, const char* const* argv);

// Fixed CSV cell format: 12 significant digits, locale independent.
std::string format_value(double v);

}  // namespace squashlab::cli
