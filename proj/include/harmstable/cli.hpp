#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace harmstable::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Fully resolved command-line configuration: per-command defaults applied
/// and every range checked.
struct RunConfig {
  std::string command;
  std::optional<double> alpha;
  std::optional<double> hurst;
  double half_width = 50.0;
  std::size_t n_terms = 100000;
  std::vector<std::size_t> n_list;
  std::size_t replications = 200;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  unsigned threads = 0;
  std::string out;
  std::string format = "json";
  bool timing = false;
  bool enforce_resolution = true;

  std::size_t trials = 100;                              ///< check-identities
  std::vector<double> lambdas{50.0, 100.0};              ///< check-condition
  double r_exp = 1.0;                                    ///< check-condition
  std::optional<std::pair<double, double>> bound_exponents;  ///< check-condition
  int cells_per_decade = 16;                             ///< check-condition
  std::vector<std::pair<double, double>> points;         ///< kernel-limit
  std::string ecdf;
  std::string ecdf_limit;
};

/// Parses arguments (without the program name) and an optional --config
/// file. Throws ConfigError or ParameterError with a message naming the
/// offending field; throws HelpRequested for --help.
RunConfig parse_config(const std::vector<std::string>& args);

struct HelpRequested {
  std::string text;
};

/// Runs a validated configuration, writing the report to cfg.out (stdout if
/// empty) and a one-line summary to `log`. Returns the exit status.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// parse_config + dispatch with diagnostics on `err`. Exit status is 0 on
/// success, 2 on configuration errors and 1 on computation or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harmstable::cli
