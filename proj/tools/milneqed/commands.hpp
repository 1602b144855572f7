#pragma once

#include <string>

#include "config.hpp"

namespace milneqed::cli {

/// Runs a resolved configuration and returns the CSV or JSON document.
/// Library failures propagate as milneqed::Error.
std::string run(Command command, const RunConfig& cfg);

std::string cmd_fig1(const RunConfig& cfg);
std::string cmd_fig2(const RunConfig& cfg);
std::string cmd_potential(const RunConfig& cfg);
std::string cmd_charge(const RunConfig& cfg);
std::string cmd_stats(const RunConfig& cfg);
std::string cmd_brems(const RunConfig& cfg);

}  // namespace milneqed::cli
