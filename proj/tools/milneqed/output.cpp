#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "config.hpp"

namespace milneqed::cli {

namespace {

std::string format12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

void canonicalise(nlohmann::ordered_json& j) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    j = std::isfinite(x) ? nlohmann::ordered_json(round12(x)) : nlohmann::ordered_json(nullptr);
  } else if (j.is_structured()) {
    for (auto& e : j) canonicalise(e);
  }
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format12(x).c_str(), nullptr);
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    // + 0.0 prints negative zero as zero
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format12(row[i] + 0.0);
    out += '\n';
  }
  return out;
}

std::string json_text(nlohmann::ordered_json j) {
  canonicalise(j);
  return j.dump(2) + "\n";
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path || path->empty() || *path == "-") {
    std::cout.write(text.data(), static_cast<std::streamsize>(text.size()));
    std::cout.flush();
    if (!std::cout) throw ConfigError("failed to write to stdout");
    return;
  }
  std::ofstream f(*path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open output file '" + *path + "'");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw ConfigError("failed to write output file '" + *path + "'");
}

}  // namespace milneqed::cli
