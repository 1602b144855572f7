#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace milneqed {

enum class Errc {
  NotNull,
  NotFuturePointing,
  DegenerateNu,
  NonTimelikeR,
  ZeroAxis,
  FrameUndefined,
  ToleranceNotMet,
  NonFinite,
  EmptySupport,
  NegativeTau,
  NonPositiveR,
  DivergentIntegral,
  MomentOverflow,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this exception; code() is stable
// and is what the command-line tool maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace milneqed
