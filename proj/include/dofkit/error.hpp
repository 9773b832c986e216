#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dofkit {

enum class Errc {
  Parse,
  NonSquare,
  DimMismatch,
  RankDeficientDirections,
  AlphaOutOfRange,
  RatioOutOfRange,
  UserCountMismatch,
  AmbientDimMismatch,
  InvalidDistribution,
  EmptySet,
  TooFewPoints,
  SupportTooLarge,
  OpenSetUnverified,
  SingularBlock,
  SingularScaling,
  NotParallel,
  NotFullyConnected,
  NotStandardForm,
  OddM,
  TooFewUsers,
  BudgetExceeded,
  ResolutionTooCoarse,
  ConditionViolated,
  NonIntegerChannel,
};

std::string_view errc_name(Errc code) noexcept;

// Errors caused by malformed or inconsistent inputs rather than by the
// analysis itself. The CLI maps these to exit code 2.
bool is_input_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace dofkit
