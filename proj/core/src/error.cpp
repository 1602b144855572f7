#include "milneqed/error.hpp"

namespace milneqed {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotNull: return "NotNull";
    case Errc::NotFuturePointing: return "NotFuturePointing";
    case Errc::DegenerateNu: return "DegenerateNu";
    case Errc::NonTimelikeR: return "NonTimelikeR";
    case Errc::ZeroAxis: return "ZeroAxis";
    case Errc::FrameUndefined: return "FrameUndefined";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::NonFinite: return "NonFinite";
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::NegativeTau: return "NegativeTau";
    case Errc::NonPositiveR: return "NonPositiveR";
    case Errc::DivergentIntegral: return "DivergentIntegral";
    case Errc::MomentOverflow: return "MomentOverflow";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace milneqed
