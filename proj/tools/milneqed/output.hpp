#pragma once

// Deterministic text output: CSV rows and JSON documents use %.12e values,
// LF line endings, and keys in insertion order.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace milneqed::cli {

/// x rounded to the 13 significant digits that %.12e prints.
double round12(double x);

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Rounds every float with round12 (non-finite values become null) and
/// serialises with two-space indentation and a trailing newline.
std::string json_text(nlohmann::ordered_json j);

/// Writes text to `path`, or to stdout when no path is given.
void write_output(const std::optional<std::string>& path, const std::string& text);

}  // namespace milneqed::cli
