#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace milneqed::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string> kKeys = {
    "schema_version", "k1",     "k2",        "eps",         "q",          "N",           "tau",
    "tau1",           "dtau",   "u_rapidity", "v_rapidity", "u_direction", "v_direction", "r_rapidity",
    "r_sigma",        "r_direction", "r_min", "r_max",      "points",     "tau_max",     "tau_points",
    "n_max",          "mode",   "tol",       "angular_order", "threads",  "out"};

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("config key '" + key + "' must be finite");
  return v;
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return j.get<int>();
}

Vec3 direction(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("config key '" + key + "' must be an array of 3 numbers");
  Vec3 v{number(j[0], key), number(j[1], key), number(j[2], key)};
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(n > 0.0)) throw ConfigError("config key '" + key + "' must be a non-zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

stats::OscillatorCount count_from_text(const std::string& s) {
  if (s == "inf" || s == "infinity") return stats::OscillatorCount::infinite();
  std::size_t used = 0;
  long n = 0;
  try {
    n = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("N entries must be positive integers or 'inf', got '" + s + "'");
  }
  if (used != s.size() || n < 1) throw ConfigError("N entries must be positive integers or 'inf', got '" + s + "'");
  return stats::OscillatorCount::finite(n);
}

template <class T>
void fill(std::optional<T>& field, const T& value) {
  if (!field) field = value;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v[0], v[1], v[2]}); }

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "fig1") return Command::Fig1;
  if (name == "fig2") return Command::Fig2;
  if (name == "potential") return Command::Potential;
  if (name == "charge") return Command::Charge;
  if (name == "stats") return Command::Stats;
  if (name == "brems") return Command::Brems;
  throw ConfigError("unknown command '" + name + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Fig1: return "fig1";
    case Command::Fig2: return "fig2";
    case Command::Potential: return "potential";
    case Command::Charge: return "charge";
    case Command::Stats: return "stats";
    case Command::Brems: return "brems";
  }
  return "?";
}

std::vector<stats::OscillatorCount> parse_n_list(const std::string& text) {
  std::vector<stats::OscillatorCount> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    require(b != std::string::npos, "empty entry in N list");
    out.push_back(count_from_text(item.substr(b, e - b + 1)));
  }
  require(!out.empty(), "N list is empty");
  return out;
}

Vec3 parse_direction(const std::string& text) {
  json arr = json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      require(item.find_first_not_of(" \t", used) == std::string::npos, "malformed direction '" + text + "'");
      arr.push_back(v);
    } catch (const std::logic_error&) {
      throw ConfigError("malformed direction '" + text + "'");
    }
  }
  return direction(arr, "direction");
}

RunConfig RunConfig::from_json(const json& j) {
  require(j.is_object(), "config must be a JSON object");
  require(j.contains("schema_version"), "config needs \"schema_version\": " + std::to_string(kSchemaVersion));
  require(j.at("schema_version").is_number_integer() && j.at("schema_version").get<int>() == kSchemaVersion,
          "unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  for (const auto& [key, value] : j.items()) require(kKeys.count(key) == 1, "unknown config key '" + key + "'");

  RunConfig c;
  auto num = [&](const char* key, std::optional<double>& field) {
    if (j.contains(key)) field = number(j.at(key), key);
  };
  auto intg = [&](const char* key, std::optional<int>& field) {
    if (j.contains(key)) field = integer(j.at(key), key);
  };
  auto dir = [&](const char* key, std::optional<Vec3>& field) {
    if (j.contains(key)) field = direction(j.at(key), key);
  };
  auto str = [&](const char* key, std::optional<std::string>& field) {
    if (!j.contains(key)) return;
    require(j.at(key).is_string(), std::string("config key '") + key + "' must be a string");
    field = j.at(key).get<std::string>();
  };
  num("k1", c.k1);
  num("k2", c.k2);
  num("eps", c.eps);
  num("q", c.q);
  num("tau", c.tau);
  num("tau1", c.tau1);
  num("dtau", c.dtau);
  num("u_rapidity", c.u_rapidity);
  num("v_rapidity", c.v_rapidity);
  num("r_rapidity", c.r_rapidity);
  num("r_sigma", c.r_sigma);
  num("r_min", c.r_min);
  num("r_max", c.r_max);
  num("tau_max", c.tau_max);
  num("tol", c.tol);
  intg("points", c.points);
  intg("tau_points", c.tau_points);
  intg("n_max", c.n_max);
  intg("angular_order", c.angular_order);
  intg("threads", c.threads);
  dir("u_direction", c.u_direction);
  dir("v_direction", c.v_direction);
  dir("r_direction", c.r_direction);
  str("mode", c.mode);
  str("out", c.out);
  if (j.contains("N")) {
    const auto& n = j.at("N");
    require(n.is_array() && !n.empty(), "config key 'N' must be a non-empty array");
    std::vector<stats::OscillatorCount> list;
    for (const auto& e : n) {
      if (e.is_string())
        list.push_back(count_from_text(e.get<std::string>()));
      else if (e.is_number_integer())
        list.push_back(count_from_text(std::to_string(e.get<long>())));
      else
        throw ConfigError("N entries must be positive integers or \"inf\"");
    }
    c.N = list;
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

void RunConfig::override_with(const RunConfig& f) {
  auto take = [](auto& mine, const auto& theirs) {
    if (theirs) mine = theirs;
  };
  take(k1, f.k1);
  take(k2, f.k2);
  take(eps, f.eps);
  take(q, f.q);
  take(N, f.N);
  take(tau, f.tau);
  take(tau1, f.tau1);
  take(dtau, f.dtau);
  take(u_rapidity, f.u_rapidity);
  take(v_rapidity, f.v_rapidity);
  take(u_direction, f.u_direction);
  take(v_direction, f.v_direction);
  take(r_rapidity, f.r_rapidity);
  take(r_sigma, f.r_sigma);
  take(r_direction, f.r_direction);
  take(r_min, f.r_min);
  take(r_max, f.r_max);
  take(points, f.points);
  take(tau_max, f.tau_max);
  take(tau_points, f.tau_points);
  take(n_max, f.n_max);
  take(mode, f.mode);
  take(tol, f.tol);
  take(angular_order, f.angular_order);
  take(threads, f.threads);
  take(out, f.out);
}

void RunConfig::resolve(Command c) {
  // k2 sets the length scale of the default grids
  switch (c) {
    case Command::Fig1:
    case Command::Potential:
    case Command::Stats: fill(k2, 1e4); break;
    case Command::Fig2:
    case Command::Charge:
    case Command::Brems: fill(k2, 1e3); break;
  }
  require(*k2 > 0.0, "k2 must be positive");
  const double L = 1.0 / *k2;
  fill(k1, c == Command::Brems ? 0.1 * *k2 : 0.0);
  fill(q, 1.0);
  fill(tol, 1e-10);
  fill(angular_order, 16);
  fill(threads, 0);
  switch (c) {
    case Command::Fig1:
      fill(r_min, 1e-1 * L);
      fill(r_max, 1e4 * L);
      fill(points, 1001);
      break;
    case Command::Fig2:
      fill(r_min, 1e-2 * L);
      fill(r_max, 1e2 * L);
      fill(points, 801);
      break;
    case Command::Potential:
      fill(r_min, 1e-2 * L);
      fill(r_max, 1e2 * L);
      fill(points, 201);
      if (!tau) {
        fill(tau_max, 10.0 * L);
        fill(tau_points, 6);
      }
      break;
    case Command::Charge:
      fill(r_min, 1e2 * L);
      fill(r_max, 1e5 * L);
      fill(points, 4);
      break;
    case Command::Stats:
      fill(tau, 10.0 * L);
      fill(N, std::vector<stats::OscillatorCount>{stats::OscillatorCount::finite(1), stats::OscillatorCount::finite(10),
                                                  stats::OscillatorCount::finite(100),
                                                  stats::OscillatorCount::infinite()});
      fill(n_max, 30);
      fill(u_rapidity, 0.0);
      fill(r_rapidity, 1.0);
      break;
    case Command::Brems:
      fill(mode, std::string("s_matrix"));
      fill(tau1, 10.0 * L);
      fill(dtau, 100.0 * L);
      fill(u_rapidity, 0.0);
      fill(v_rapidity, 0.5);
      fill(r_rapidity, 0.0);
      break;
  }
  const Vec3 z{0.0, 0.0, 1.0};
  if (u_rapidity) fill(u_direction, z);
  if (v_rapidity) fill(v_direction, z);
  if (r_rapidity) fill(r_direction, z);

  require(*k1 >= 0.0, "k1 must be non-negative");
  require(*k2 > *k1, "k2 must exceed k1");
  if (eps) require(*eps > 0.0, "eps must be positive");
  require(*q != 0.0, "q must be non-zero");
  require(*tol > 0.0 && *tol < 1.0, "tol must lie in (0, 1)");
  require(*angular_order >= 2 && *angular_order <= 512, "angular_order must lie in [2, 512]");
  require(*threads >= 0, "threads must be non-negative");
  for (auto* t : {&tau, &tau1, &dtau, &tau_max})
    if (*t) require(**t >= 0.0, "times must be non-negative");
  if (r_sigma) require(*r_sigma > 0.0, "r_sigma must be positive");
  if (r_rapidity) require(*r_rapidity >= 0.0, "r_rapidity must be non-negative (use r_direction to orient)");
  if (n_max) require(*n_max >= 0 && *n_max <= 400, "n_max must lie in [0, 400]");
  if (mode)
    require(*mode == "finite_times" || *mode == "tau1_limit" || *mode == "s_matrix",
            "mode must be finite_times, tau1_limit or s_matrix");
  if (points) {
    require(*points >= 1, "grid is empty (points must be >= 1)");
    require(*r_min >= 0.0 && *r_max >= *r_min, "need 0 <= r_min <= r_max");
    require(c == Command::Fig2 || *r_min > 0.0, "r_min must be positive");
    require(*points == 1 || *r_max > *r_min, "a grid of several points needs r_max > r_min");
    if (*r_min > 0.0 && *points > 1) {
      const double decades = std::log10(*r_max / *r_min);
      require(*points <= 200.0 * decades + 1.0 + 1e-9, "log grid exceeds 200 points per decade");
    }
  }
  if (tau_points) require(*tau_points >= 1, "tau grid is empty (tau_points must be >= 1)");
}

ordered_json RunConfig::to_json(Command c) const {
  ordered_json j;
  j["k1"] = *k1;
  j["k2"] = *k2;
  if (eps) j["eps"] = *eps;
  j["q"] = *q;
  if (c == Command::Stats) {
    ordered_json n = ordered_json::array();
    for (const auto& e : *N) {
      if (e.is_infinite())
        n.push_back("inf");
      else
        n.push_back(e.value());
    }
    j["N"] = n;
    j["n_max"] = *n_max;
  }
  if (tau) j["tau"] = *tau;
  if (tau1) j["tau1"] = *tau1;
  if (dtau) j["dtau"] = *dtau;
  if (u_rapidity) {
    j["u_rapidity"] = *u_rapidity;
    j["u_direction"] = vec_json(*u_direction);
  }
  if (v_rapidity) {
    j["v_rapidity"] = *v_rapidity;
    j["v_direction"] = vec_json(*v_direction);
  }
  if (r_rapidity) {
    j["r_rapidity"] = *r_rapidity;
    j["r_direction"] = vec_json(*r_direction);
    if (r_sigma) j["r_sigma"] = *r_sigma;
  }
  if (c == Command::Charge) {
    j["r_min"] = *r_min;
    j["r_max"] = *r_max;
    j["points"] = *points;
  }
  if (mode) j["mode"] = *mode;
  j["tol"] = *tol;
  j["angular_order"] = *angular_order;
  return j;
}

}  // namespace milneqed::cli
