#include "dofkit/error.hpp"

namespace dofkit {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::Parse: return "Parse";
    case Errc::NonSquare: return "NonSquare";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::RankDeficientDirections: return "RankDeficientDirections";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::RatioOutOfRange: return "RatioOutOfRange";
    case Errc::UserCountMismatch: return "UserCountMismatch";
    case Errc::AmbientDimMismatch: return "AmbientDimMismatch";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::EmptySet: return "EmptySet";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::SupportTooLarge: return "SupportTooLarge";
    case Errc::OpenSetUnverified: return "OpenSetUnverified";
    case Errc::SingularBlock: return "SingularBlock";
    case Errc::SingularScaling: return "SingularScaling";
    case Errc::NotParallel: return "NotParallel";
    case Errc::NotFullyConnected: return "NotFullyConnected";
    case Errc::NotStandardForm: return "NotStandardForm";
    case Errc::OddM: return "OddM";
    case Errc::TooFewUsers: return "TooFewUsers";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::NonIntegerChannel: return "NonIntegerChannel";
  }
  return "Unknown";
}

bool is_input_error(Errc code) noexcept {
  switch (code) {
    case Errc::Parse:
    case Errc::NonSquare:
    case Errc::DimMismatch:
    case Errc::RankDeficientDirections:
    case Errc::AlphaOutOfRange:
    case Errc::RatioOutOfRange:
    case Errc::UserCountMismatch:
    case Errc::AmbientDimMismatch:
    case Errc::InvalidDistribution:
    case Errc::EmptySet:
    case Errc::OddM:
    case Errc::TooFewUsers:
      return true;
    default:
      return false;
  }
}

}  // namespace dofkit
