#include "harmstable/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "harmstable/analysis.hpp"
#include "harmstable/error.hpp"
#include "harmstable/harmonizable.hpp"
#include "harmstable/io.hpp"

namespace harmstable::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kCommands{"simulate",        "lln",
                                         "clt",             "iid",
                                         "check-condition", "check-identities",
                                         "kernel-limit"};

constexpr double kDefaultAlpha = 1.2;
constexpr double kDefaultHurst = 0.75;

/// Raw flag values before defaults are resolved.
struct RawOptions {
  std::optional<double> alpha;
  std::optional<double> hurst;
  std::optional<double> half_width;
  std::optional<std::size_t> n_terms;
  std::optional<std::size_t> n;
  std::optional<std::string> n_list;
  std::optional<std::size_t> reps;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  unsigned threads = 0;
  std::string out;
  std::optional<std::string> format;
  std::string config;
  bool timing = false;
  bool no_resolution_check = false;
  std::optional<std::size_t> trials;
  std::optional<std::string> lambda_list;
  std::optional<double> r_exp;
  std::optional<double> r1;
  std::optional<double> r2;
  std::optional<int> cells_per_decade;
  std::optional<std::string> points;
  std::string ecdf;
  std::string ecdf_limit;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void build_app(CLI::App& app, RawOptions& o) {
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.allow_extras();
  app.add_option("--alpha", o.alpha, "stability index in (0, 2), default 1.2");
  app.add_option("--hurst", o.hurst, "Hurst parameter in (0, 1), default 0.75");
  app.add_option("--half-width", o.half_width, "frequency truncation M");
  app.add_option("--n-terms", o.n_terms, "number of series atoms");
  app.add_option("--n", o.n, "number of increments");
  app.add_option("--n-list", o.n_list, "comma-separated list of n");
  app.add_option("--reps", o.reps, "Monte Carlo replications");
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--stream", o.stream, "stream index (simulate)");
  app.add_option("--threads", o.threads, "worker threads, 0 = all cores");
  app.add_option("--out", o.out, "output file (stdout if omitted)");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", o.config, "flat JSON file of flag values");
  app.add_flag("--timing", o.timing, "record wall-clock runtime in the report");
  app.add_flag("--no-resolution-check", o.no_resolution_check,
               "allow n above n_terms / (2 half_width)");
  app.add_option("--trials", o.trials, "random measures (check-identities)");
  app.add_option("--lambda-list", o.lambda_list, "outer cutoffs (check-condition)");
  app.add_option("--r-exp", o.r_exp, "tail exponent of psi (check-condition)");
  app.add_option("--r1", o.r1, "first power-law exponent (check-condition)");
  app.add_option("--r2", o.r2, "second power-law exponent (check-condition)");
  app.add_option("--cells-per-decade", o.cells_per_decade, "quadrature grading");
  app.add_option("--points", o.points, "s:u pairs, comma-separated (kernel-limit)");
  app.add_option("--ecdf", o.ecdf, "write the ECDF of the sample as CSV");
  app.add_option("--ecdf-limit", o.ecdf_limit, "write the ECDF of the limit sample (clt)");
  const std::vector<std::string> about{
      "one realization: increments, Q_m, realized U and Rosenblatt value",
      "Monte Carlo rate of |Q_n/n - U|",
      "normalized error against the realized Rosenblatt law (KS distance)",
      "quadratic variation growth of iid stable draws",
      "existence condition of the double integral of the limit kernel",
      "exact pathwise identities on random measures",
      "convergence of the scaled kernel h_n to its limit"};
  for (std::size_t k = 0; k < kCommands.size(); ++k) {
    app.add_subcommand(kCommands[k], about[k])->fallthrough();
  }
}

/// Value of --config in args, if any.
std::string find_config_path(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  return path;
}

std::string config_token(const std::string& key, const Json& v) {
  switch (v.type()) {
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      return v.dump();
    case Json::value_t::number_float:
      return format_g17(v.get<double>());
    case Json::value_t::string:
      return v.get<std::string>();
    case Json::value_t::array: {
      std::string joined;
      for (const Json& item : v) {
        if (!item.is_number()) throw ConfigError("config field '" + key + "' must list numbers");
        joined += (joined.empty() ? "" : ",") + config_token(key, item);
      }
      return joined;
    }
    default:
      throw ConfigError("config field '" + key + "' has an unsupported type");
  }
}

/// Tokens equivalent to the config file, placed before the command-line
/// arguments so that flags win.
std::vector<std::string> config_tokens(const std::string& path, CLI::App& app,
                                       const std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file " + path + " must hold a JSON object");

  std::vector<std::string> tokens;
  for (const auto& [key, value] : doc.items()) {
    if (key == "command" || key == "kind") {
      if (!value.is_string()) throw ConfigError("config field '" + key + "' must be a string");
      const bool named = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end();
      });
      if (!named) tokens.insert(tokens.begin(), value.get<std::string>());
      continue;
    }
    if (key == "config") throw ConfigError("config files cannot include other config files");
    const CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (opt == nullptr) throw ConfigError("unknown field in config file: " + key);
    if (value.is_null()) continue;
    if (opt->get_expected_max() == 0) {
      if (!value.is_boolean()) throw ConfigError("config field '" + key + "' must be true or false");
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    tokens.push_back("--" + key);
    tokens.push_back(config_token(key, value));
  }
  return tokens;
}

template <typename T>
std::vector<T> parse_list(const std::string& field, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (item.empty() || (std::is_unsigned_v<T> && item[0] == '-') || !(is >> v) || !is.eof()) {
      throw ConfigError("invalid entry '" + item + "' in " + field);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(field + " must not be empty");
  return out;
}

std::vector<std::pair<double, double>> parse_points(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("points entries must look like s:u");
    const auto s = parse_list<double>("points", item.substr(0, colon));
    const auto u = parse_list<double>("points", item.substr(colon + 1));
    out.emplace_back(s.front(), u.front());
  }
  if (out.empty()) throw ConfigError("points must not be empty");
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

std::vector<std::size_t> doubling(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t n = from; n <= to; n *= 2) out.push_back(n);
  return out;
}

RunConfig resolve(const RawOptions& o, const std::string& command) {
  // Ranges first, so that a bad value is named even without a command.
  if (o.alpha) require(*o.alpha > 0.0 && *o.alpha < 2.0, "alpha out of range: must lie in (0, 2), got " + fmt(*o.alpha));
  if (o.hurst) require(*o.hurst > 0.0 && *o.hurst < 1.0, "hurst out of range: must lie in (0, 1), got " + fmt(*o.hurst));
  if (o.half_width) {
    require(std::isfinite(*o.half_width) && *o.half_width > 0.0,
            "half-width out of range: must be positive, got " + fmt(*o.half_width));
  }
  if (o.n_terms) require(*o.n_terms >= 1, "n-terms out of range: must be at least 1");
  if (o.n) require(*o.n >= 1, "n out of range: must be at least 1");
  if (o.reps) require(*o.reps >= 1, "reps out of range: must be at least 1");
  if (o.trials) require(*o.trials >= 1, "trials out of range: must be at least 1");
  if (o.cells_per_decade) require(*o.cells_per_decade >= 4, "cells-per-decade out of range: must be at least 4");
  if (o.r1) require(*o.r1 > 0.0, "r1 out of range: must be positive");
  if (o.r2) require(*o.r2 > 0.0, "r2 out of range: must be positive");
  if (o.r_exp) require(*o.r_exp > 0.0, "r-exp out of range: must be positive");

  if (command.empty()) {
    throw ConfigError("missing required field: command (one of simulate, lln, clt, iid, "
                      "check-condition, check-identities, kernel-limit)");
  }
  if (o.n && o.n_list && command != "simulate") {
    throw ConfigError("give either n or n-list, not both");
  }

  RunConfig c;
  c.command = command;
  // check-identities cycles through several alphas unless one is given; iid
  // has no Hurst parameter.
  c.alpha = command == "check-identities" ? o.alpha : o.alpha.value_or(kDefaultAlpha);
  if (command != "iid") c.hurst = o.hurst.value_or(kDefaultHurst);
  c.seed = o.seed;
  c.stream = o.stream;
  c.threads = o.threads;
  c.out = o.out;
  c.timing = o.timing;
  c.enforce_resolution = !o.no_resolution_check;
  c.ecdf = o.ecdf;
  c.ecdf_limit = o.ecdf_limit;
  c.format = o.format.value_or(command == "simulate" ? "csv" : "json");

  std::vector<std::size_t> n_default;
  if (command == "simulate") {
    c.half_width = 50.0;
    c.n_terms = 100000;
    n_default = {256};
  } else if (command == "lln") {
    c.half_width = 50.0;
    c.n_terms = 100000;
    c.replications = 200;
    n_default = doubling(64, 512);
  } else if (command == "clt") {
    c.half_width = 20.0;
    c.n_terms = 100000;
    c.replications = 500;
    n_default = {256};
  } else if (command == "iid") {
    c.replications = 200;
    n_default = doubling(64, 4096);
  } else if (command == "check-identities") {
    c.half_width = 10.0;
    c.n_terms = 1000;
    c.trials = 100;
    n_default = {1, 4, 16, 64};
  } else if (command == "kernel-limit") {
    n_default = {64, 256, 1024, 4096, 16384};
  }
  if (o.half_width) c.half_width = *o.half_width;
  if (o.n_terms) c.n_terms = *o.n_terms;
  if (o.reps) c.replications = *o.reps;
  if (o.trials) c.trials = *o.trials;
  c.n_list = o.n ? std::vector<std::size_t>{*o.n}
                 : (o.n_list ? parse_list<std::size_t>("n-list", *o.n_list) : n_default);
  for (std::size_t n : c.n_list) require(n >= 1, "n-list out of range: entries must be at least 1");

  if (command == "simulate") {
    // n-list selects the partial sums Q_m reported next to the n increments.
    const std::size_t n = o.n ? *o.n : (o.n_list ? 0 : 256);
    std::vector<std::size_t> m = o.n_list ? c.n_list : doubling(1, n);
    if (n > 0) m.push_back(n);
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    c.n_list = m;
  }
  if (command == "clt") {
    if (c.n_list.size() != 1) throw ConfigError("clt takes a single n");
    const ModelParams p(*c.alpha, *c.hurst);
    if (!p.clt_regime()) {
      throw ConfigError("clt regime violated: requires hurst > 1/2 and alpha (1 - hurst) < 1/2, "
                        "got alpha (1 - hurst) = " + fmt(*c.alpha * (1.0 - *c.hurst)));
    }
  }
  if (command == "check-condition") {
    if (o.lambda_list) c.lambdas = parse_list<double>("lambda-list", *o.lambda_list);
    for (double l : c.lambdas) {
      require(std::isfinite(l) && l > 1.0, "lambda-list out of range: entries must exceed 1");
    }
    c.r_exp = o.r_exp.value_or(1.0);
    require(c.r_exp * *c.alpha > 1.0, "r-exp out of range: r-exp * alpha must exceed 1");
    if (o.cells_per_decade) c.cells_per_decade = *o.cells_per_decade;
    if (o.r1.has_value() != o.r2.has_value()) throw ConfigError("r1 and r2 must be given together");
    if (o.r1) c.bound_exponents = std::pair{*o.r1, *o.r2};
  }
  if (command == "kernel-limit") {
    c.points = parse_points(o.points.value_or("1:-0.5,3:1,0.5:-2"));
    for (const auto& [s, u] : c.points) {
      require(s != 0.0 && u != 0.0 && u < s, "points out of range: need nonzero s, u with u < s");
    }
  }
  if (!c.ecdf_limit.empty() && command != "clt") {
    throw ConfigError("ecdf-limit applies to clt only");
  }
  return c;
}

Json base_config(const RunConfig& c) {
  Json j;
  j["alpha"] = c.alpha ? Json(*c.alpha) : Json(nullptr);
  j["hurst"] = c.hurst ? Json(*c.hurst) : Json(nullptr);
  return j;
}

Json config_json(const RunConfig& c) {
  Json j = base_config(c);
  const std::string& cmd = c.command;
  if (cmd == "simulate" || cmd == "lln" || cmd == "clt" || cmd == "check-identities") {
    j["half-width"] = c.half_width;
    j["n-terms"] = c.n_terms;
  }
  if (cmd == "simulate") {
    j["n"] = c.n_list.back();
    j["n-list"] = c.n_list;
    j["stream"] = c.stream;
  } else if (cmd == "clt") {
    j["n"] = c.n_list.front();
  } else if (cmd == "check-identities") {
    j["trials"] = c.trials;
    j["n-list"] = c.n_list;
  } else if (cmd != "check-condition") {
    j["n-list"] = c.n_list;
  }
  if (cmd == "lln" || cmd == "clt" || cmd == "iid") j["reps"] = c.replications;
  if (cmd == "lln" || cmd == "clt") j["no-resolution-check"] = !c.enforce_resolution;
  if (cmd == "check-condition") {
    j["lambda-list"] = c.lambdas;
    j["r-exp"] = c.r_exp;
    j["r1"] = c.bound_exponents ? Json(c.bound_exponents->first) : Json(nullptr);
    j["r2"] = c.bound_exponents ? Json(c.bound_exponents->second) : Json(nullptr);
    j["cells-per-decade"] = c.cells_per_decade;
  }
  if (cmd == "kernel-limit") {
    std::string pts;
    for (const auto& [s, u] : c.points) {
      pts += (pts.empty() ? "" : ",") + format_g17(s) + ":" + format_g17(u);
    }
    j["points"] = pts;
  }
  j["seed"] = c.seed;
  return j;
}

Json report_json(const RunConfig& c, Json results, std::optional<double> runtime) {
  Json j;
  j["kind"] = c.command;
  j["config"] = config_json(c);
  j["results"] = std::move(results);
  j["runtime_seconds"] = runtime && c.timing ? Json(*runtime) : Json(nullptr);
  j["version"] = kVersion;
  return j;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

ExperimentConfig experiment_config(const RunConfig& c) {
  ExperimentConfig e;
  e.alpha = *c.alpha;
  e.hurst = c.hurst;
  e.half_width = c.half_width;
  e.n_terms = c.n_terms;
  e.n_list = c.n_list;
  e.replications = c.replications;
  e.master_seed = c.seed;
  e.enforce_resolution = c.enforce_resolution;
  return e;
}

void write_ecdf_file(const std::string& path, const std::vector<double>& sample) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open output file for writing: " + path);
  write_ecdf_csv(f, sample);
  if (!f) throw IoError("write failed: " + path);
}

std::vector<double> sample_values(const ExperimentReport& r, bool limit) {
  std::vector<double> v;
  for (const SampleRow& row : r.samples) {
    if ((row.n == 0) == limit) v.push_back(row.value);
  }
  return v;
}

int run_experiment(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const ExperimentConfig e = experiment_config(c);
  ExperimentReport r;
  if (c.command == "lln") {
    r = run_lln_experiment(ModelParams(*c.alpha, *c.hurst), e, c.threads);
  } else if (c.command == "clt") {
    r = run_clt_experiment(ModelParams(*c.alpha, *c.hurst), e, c.threads);
  } else {
    r = iid_stable_qv_experiment(e, c.threads);
  }

  if (!c.ecdf.empty()) write_ecdf_file(c.ecdf, sample_values(r, false));
  if (!c.ecdf_limit.empty()) write_ecdf_file(c.ecdf_limit, sample_values(r, true));

  if (c.format == "csv") {
    write_samples_csv(out, r.samples);
  } else {
    Json results;
    Json per_n = Json::array();
    for (const PerNSummary& s : r.per_n) {
      Json row;
      row["n"] = s.n;
      row["median"] = s.median;
      row["q25"] = s.q25;
      row["q75"] = s.q75;
      if (s.statistic_median) row["statistic_median"] = *s.statistic_median;
      per_n.push_back(row);
    }
    results["per_n"] = per_n;
    results["slope"] = r.slope ? Json(r.slope->slope) : Json(nullptr);
    results["slope_stderr"] = r.slope ? Json(r.slope->standard_error) : Json(nullptr);
    results["ks_distance"] = optional_number(r.ks_distance);
    if (c.command == "lln") {
      results["statistic_slope"] = r.statistic_slope ? Json(r.statistic_slope->slope) : Json(nullptr);
      results["statistic_slope_stderr"] =
          r.statistic_slope ? Json(r.statistic_slope->standard_error) : Json(nullptr);
    }
    if (c.command != "iid") results["tail_error_estimate"] = optional_number(r.tail_error);
    write_json(out, report_json(c, results, r.runtime_seconds));
  }

  if (c.command == "clt") {
    log << "clt: KS distance " << fmt(*r.ks_distance) << " at n = " << c.n_list.front() << " ("
        << c.replications << " + " << c.replications << " draws)\n";
  } else {
    log << c.command << ": log-log slope of the median "
        << (r.slope ? fmt(r.slope->slope) + " (stderr " + fmt(r.slope->standard_error) + ")"
                    : std::string("unavailable"))
        << " over " << c.n_list.size() << " values of n, " << c.replications
        << " replications\n";
  }
  return 0;
}

int run_simulate(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const ModelParams p(*c.alpha, *c.hurst);
  const std::size_t n = c.n_list.back();
  const std::vector<std::size_t>& m_list = c.n_list;

  RngStream rng(c.seed, c.stream);
  const JumpMeasure jm = build_jump_measure(p.alpha(), c.half_width, c.n_terms, rng);
  const Provenance source{c.seed, c.stream, c.half_width, c.n_terms};
  const CoupledRealization cr = couple(jm, n, p, m_list, source, true);

  if (c.format == "csv") {
    out << "j,re,im\n";
    const Eigen::ArrayXcd& y = cr.increments.increments;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      out << j << ',' << format_g17(y[j].real()) << ',' << format_g17(y[j].imag()) << '\n';
    }
  } else {
    Json source;
    source["seed"] = c.seed;
    source["stream"] = c.stream;
    source["alpha"] = p.alpha();
    source["hurst"] = p.hurst();
    source["M"] = c.half_width;
    source["n_terms"] = c.n_terms;
    Json results;
    results["source"] = source;
    results["u_realized"] = cr.u_realized;
    results["rosenblatt"] = cr.rosenblatt;
    Json q = Json::array();
    for (const auto& [m, value] : cr.q_partial) {
      Json row;
      row["m"] = m;
      row["q"] = value;
      row["normalized_error"] = normalized_error(value, cr.u_realized, m, p);
      q.push_back(row);
    }
    results["q_partial"] = q;
    Json inc = Json::array();
    const Eigen::ArrayXcd& y = cr.increments.increments;
    for (Eigen::Index j = 0; j < y.size(); ++j) inc.push_back(Json::array({y[j].real(), y[j].imag()}));
    results["increments"] = inc;
    write_json(out, report_json(c, results, std::nullopt));
  }
  log << "simulate: " << n << " increments from " << jm.n_terms() << " atoms, U = "
      << fmt(cr.u_realized) << ", Rosenblatt value = " << fmt(cr.rosenblatt) << '\n';
  return 0;
}

int run_identities(const RunConfig& c, std::ostream& out, std::ostream& log) {
  constexpr double kTolerance = 1e-8;
  IdentityConfig ic;
  ic.trials = c.trials;
  if (c.alpha) ic.alphas = {*c.alpha};
  ic.hurst = *c.hurst;
  ic.half_width = c.half_width;
  ic.n_terms = c.n_terms;
  ic.m_list = c.n_list;
  ic.master_seed = c.seed;
  const IdentityReport r = run_identity_suite(ic, c.threads);
  const bool ok = r.passed(kTolerance);

  if (c.format == "csv") {
    out << "identity,checks,max_relative_error\n";
    out << "norm," << r.norm_checks << ',' << format_g17(r.max_norm_error) << '\n';
    out << "normalized_error," << r.error_checks << ',' << format_g17(r.max_error_identity_error)
        << '\n';
  } else {
    Json results;
    results["norm_checks"] = r.norm_checks;
    results["max_norm_error"] = r.max_norm_error;
    results["error_checks"] = r.error_checks;
    results["max_normalized_error_error"] = r.max_error_identity_error;
    results["tolerance"] = kTolerance;
    results["passed"] = ok;
    write_json(out, report_json(c, results, r.runtime_seconds));
  }
  if (!ok) {
    log << "error: identity check failed: max relative errors " << fmt(r.max_norm_error) << ", "
        << fmt(r.max_error_identity_error) << " exceed " << fmt(kTolerance) << '\n';
    return 1;
  }
  log << "check-identities: " << r.norm_checks + r.error_checks
      << " checks, max relative errors " << fmt(r.max_norm_error) << " and "
      << fmt(r.max_error_identity_error) << " (tolerance " << fmt(kTolerance) << ")\n";
  return 0;
}

double relative_change(const std::vector<double>& v) {
  return v.front() != 0.0 ? v.back() / v.front() - 1.0 : std::nan("");
}

int run_condition(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const ModelParams p(*c.alpha, *c.hurst);
  QuadratureSpec quad;
  quad.cells_per_decade = c.cells_per_decade;
  const std::vector<double> values = condition_scan(p, c.r_exp, c.lambdas, quad);
  std::vector<double> bound_values;
  if (c.bound_exponents) {
    bound_values = power_law_quadrature(c.bound_exponents->first, c.bound_exponents->second, c.lambdas, quad);
  }

  if (c.format == "csv") {
    out << "quantity,lambda,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << "condition," << format_g17(c.lambdas[i]) << ',' << format_g17(values[i]) << '\n';
    }
    for (std::size_t i = 0; i < bound_values.size(); ++i) {
      out << "power_law_bound," << format_g17(c.lambdas[i]) << ',' << format_g17(bound_values[i]) << '\n';
    }
  } else {
    const auto series = [&](const std::vector<double>& v) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < v.size(); ++i) {
        Json row;
        row["lambda"] = c.lambdas[i];
        row["value"] = v[i];
        rows.push_back(row);
      }
      return rows;
    };
    Json results;
    results["condition"] = series(values);
    results["relative_change"] = relative_change(values);
    if (c.bound_exponents) {
      Json bound;
      bound["values"] = series(bound_values);
      bound["relative_change"] = relative_change(bound_values);
      results["power_law_bound"] = bound;
    }
    write_json(out, report_json(c, results, std::nullopt));
  }
  log << "check-condition: relative change " << fmt(relative_change(values)) << " from lambda = "
      << fmt(c.lambdas.front()) << " to " << fmt(c.lambdas.back());
  if (c.bound_exponents) log << ", power-law bound change " << fmt(relative_change(bound_values));
  log << '\n';
  return 0;
}

int run_kernel_limit(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const ModelParams p(*c.alpha, *c.hurst);
  std::vector<std::vector<double>> deviations;
  for (const auto& [s, u] : c.points) deviations.push_back(kernel_limit_check(s, u, p, c.n_list));

  if (c.format == "csv") {
    out << "s,u,n,deviation\n";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      for (std::size_t i = 0; i < c.n_list.size(); ++i) {
        out << format_g17(c.points[k].first) << ',' << format_g17(c.points[k].second) << ','
            << c.n_list[i] << ',' << format_g17(deviations[k][i]) << '\n';
      }
    }
  } else {
    Json rows = Json::array();
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      Json row;
      row["s"] = c.points[k].first;
      row["u"] = c.points[k].second;
      Json dev = Json::array();
      for (std::size_t i = 0; i < c.n_list.size(); ++i) {
        Json d;
        d["n"] = c.n_list[i];
        d["deviation"] = deviations[k][i];
        dev.push_back(d);
      }
      row["deviations"] = dev;
      rows.push_back(row);
    }
    Json results;
    results["points"] = rows;
    write_json(out, report_json(c, results, std::nullopt));
  }
  double worst = 0.0;
  for (const auto& d : deviations) worst = std::max(worst, d.back());
  log << "kernel-limit: largest deviation at n = " << c.n_list.back() << " is " << fmt(worst)
      << '\n';
  return 0;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RawOptions o;
  CLI::App app("Simulation toolkit for harmonizable fractional stable motion", "harmstable");
  build_app(app, o);

  std::vector<std::string> tokens;
  const std::string config_path = find_config_path(args);
  if (!config_path.empty()) tokens = config_tokens(config_path, app, args);
  tokens.insert(tokens.end(), args.begin(), args.end());
  std::reverse(tokens.begin(), tokens.end());

  try {
    app.parse(tokens);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  std::vector<std::string> extras = app.remaining();
  std::string command;
  for (const CLI::App* sub : app.get_subcommands()) {
    command = sub->get_name();
    const auto more = sub->remaining();
    extras.insert(extras.end(), more.begin(), more.end());
  }
  for (const std::string& e : extras) {
    if (e.rfind("-", 0) == 0) throw ConfigError("unknown flag: " + e);
  }
  if (!extras.empty()) throw ConfigError("unexpected argument: " + extras.front());
  return resolve(o, command);
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw IoError("cannot open output file for writing: " + cfg.out);
  }
  std::ostream& sink = cfg.out.empty() ? out : file;

  int status = 0;
  if (cfg.command == "simulate") {
    status = run_simulate(cfg, sink, log);
  } else if (cfg.command == "lln" || cfg.command == "clt" || cfg.command == "iid") {
    status = run_experiment(cfg, sink, log);
  } else if (cfg.command == "check-identities") {
    status = run_identities(cfg, sink, log);
  } else if (cfg.command == "check-condition") {
    status = run_condition(cfg, sink, log);
  } else if (cfg.command == "kernel-limit") {
    status = run_kernel_limit(cfg, sink, log);
  } else {
    throw ConfigError("unknown command: " + cfg.command);
  }
  sink.flush();
  if (!sink) throw IoError("write failed: " + (cfg.out.empty() ? std::string("stdout") : cfg.out));
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(parse_config(args), out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace harmstable::cli
