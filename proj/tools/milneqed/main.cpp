#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "milneqed/error.hpp"
#include "output.hpp"

namespace {

using milneqed::Errc;
using namespace milneqed::cli;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericError = 3;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ToleranceNotMet:
    case Errc::NonFinite:
    case Errc::DivergentIntegral:
    case Errc::MomentOverflow:
    case Errc::FrameUndefined: return kNumericError;
    default: return kConfigError;
  }
}

int fail(int exit_code, const std::string& code, const std::string& message) {
  nlohmann::ordered_json err;
  err["error"] = {{"code", code}, {"exit_code", exit_code}, {"message", message}};
  std::cerr << err.dump() << '\n';
  return exit_code;
}

struct Flags {
  std::string config;
  RunConfig cfg;
  std::string n_list, u_dir, v_dir, r_dir;
};

template <class T>
void bind_opt(CLI::App& app, const std::string& name, std::optional<T>& field, const std::string& help) {
  app.add_option_function<T>(name, [&field](const T& v) { field = v; }, help);
}

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON config file (schema_version 1)");
  auto& c = f.cfg;
  bind_opt(app, "--k1", c.k1, "lower cutoff k1");
  bind_opt(app, "--k2", c.k2, "upper cutoff k2");
  bind_opt(app, "--eps", c.eps, "raised-cosine edge half-width (omit for the sharp step)");
  bind_opt(app, "--q", c.q, "renormalised charge q_ren");
  app.add_option("--N", f.n_list, "oscillator counts, e.g. 1,10,100,inf");
  bind_opt(app, "--tau", c.tau, "cosmic time tau");
  bind_opt(app, "--tau1", c.tau1, "time of the velocity change");
  bind_opt(app, "--dtau", c.dtau, "observation delay after tau1");
  bind_opt(app, "--u-rapidity", c.u_rapidity, "rapidity of the initial velocity u");
  bind_opt(app, "--v-rapidity", c.v_rapidity, "rapidity of the final velocity v");
  app.add_option("--u-direction", f.u_dir, "direction of u as x,y,z");
  app.add_option("--v-direction", f.v_dir, "direction of v as x,y,z");
  bind_opt(app, "--r-rapidity", c.r_rapidity, "rapidity of the centre-of-mass label R0");
  app.add_option("--r-direction", f.r_dir, "direction of R0 as x,y,z");
  bind_opt(app, "--r-sigma", c.r_sigma, "rapidity width of a Gaussian R distribution");
  bind_opt(app, "--r-min", c.r_min, "first grid radius");
  bind_opt(app, "--r-max", c.r_max, "last grid radius");
  bind_opt(app, "--points", c.points, "number of grid radii");
  bind_opt(app, "--tau-max", c.tau_max, "last grid time (potential)");
  bind_opt(app, "--tau-points", c.tau_points, "number of grid times (potential)");
  bind_opt(app, "--n-max", c.n_max, "largest photon number (stats)");
  bind_opt(app, "--mode", c.mode, "brems probability: finite_times, tau1_limit or s_matrix");
  bind_opt(app, "--tol", c.tol, "relative quadrature tolerance");
  bind_opt(app, "--angular-order", c.angular_order, "points of the fixed angular and R rules");
  bind_opt(app, "--threads", c.threads, "worker threads (0: hardware concurrency)");
  bind_opt(app, "--out", c.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularised potentials and photon statistics of classical pointlike sources"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  add_flags(app, flags);
  const char* names[] = {"fig1", "fig2", "potential", "charge", "stats", "brems"};
  const char* help[] = {"Coulomb comparison of the long-time potential (CSV)",
                        "effective charge density and its k1/k2 split (CSV)",
                        "potential on a tau-r grid with the irreducible baseline (CSV)",
                        "enclosed charge sweep and Q verdict (JSON)",
                        "photon-number distributions for a uniformly moving charge (JSON)",
                        "mean photon numbers and no-photon probability for a velocity change (JSON)"};
  for (int i = 0; i < 6; ++i) app.add_subcommand(names[i], help[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kConfigError, "ConfigError", e.what());
  }

  try {
    const Command command = parse_command(app.get_subcommands().front()->get_name());
    RunConfig cfg = flags.config.empty() ? RunConfig{} : RunConfig::from_file(flags.config);
    if (!flags.n_list.empty()) flags.cfg.N = parse_n_list(flags.n_list);
    if (!flags.u_dir.empty()) flags.cfg.u_direction = parse_direction(flags.u_dir);
    if (!flags.v_dir.empty()) flags.cfg.v_direction = parse_direction(flags.v_dir);
    if (!flags.r_dir.empty()) flags.cfg.r_direction = parse_direction(flags.r_dir);
    cfg.override_with(flags.cfg);
    cfg.resolve(command);
    const std::string text = run(command, cfg);
    write_output(cfg.out, text);
    return kOk;
  } catch (const ConfigError& e) {
    return fail(kConfigError, "ConfigError", e.what());
  } catch (const milneqed::Error& e) {
    return fail(exit_code_for(e.code()), std::string(milneqed::to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail(kNumericError, "InternalError", e.what());
  }
}
