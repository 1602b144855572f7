#pragma once

// Run configuration shared by all subcommands. A JSON file supplies values,
// command-line flags override them, and command defaults fill the rest.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "milneqed/minkowski.hpp"
#include "milneqed/statistics.hpp"

namespace milneqed::cli {

inline constexpr int kSchemaVersion = 1;

enum class Command { Fig1, Fig2, Potential, Charge, Stats, Brems };

Command parse_command(const std::string& name);
std::string to_string(Command c);

/// Invalid or inconsistent user input; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every field is optional until `resolve` applies the command defaults.
struct RunConfig {
  std::optional<double> k1, k2, eps, q;
  std::optional<std::vector<stats::OscillatorCount>> N;
  std::optional<double> tau, tau1, dtau;
  std::optional<double> u_rapidity, v_rapidity;
  std::optional<Vec3> u_direction, v_direction;
  std::optional<double> r_rapidity, r_sigma;
  std::optional<Vec3> r_direction;
  std::optional<double> r_min, r_max;
  std::optional<int> points;
  std::optional<double> tau_max;
  std::optional<int> tau_points;
  std::optional<int> n_max;
  std::optional<std::string> mode;
  std::optional<double> tol;
  std::optional<int> angular_order;
  std::optional<int> threads;
  std::optional<std::string> out;

  /// Reads a versioned JSON object; unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);

  /// Fields set in `flags` replace those set here.
  void override_with(const RunConfig& flags);
  /// Applies command defaults and validates ranges; throws ConfigError.
  void resolve(Command c);

  /// Resolved parameters in a stable key order, echoed into JSON output.
  nlohmann::ordered_json to_json(Command c) const;
};

/// "1,10,inf" -> counts; throws ConfigError.
std::vector<stats::OscillatorCount> parse_n_list(const std::string& text);
/// "x,y,z" -> unit vector; throws ConfigError for zero or malformed input.
Vec3 parse_direction(const std::string& text);

}  // namespace milneqed::cli
