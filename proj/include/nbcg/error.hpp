#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nbcg {

enum class ErrorCode {
  ZeroCapacity,
  NodeNotActive,
  NodeNotInCluster,
  LastNodeGuard,
  NodeNotReserved,
  NodeNotInTransit,
  DuplicateNode,
  InvalidThresholds,
  DuplicateGroup,
  AlreadyGrouped,
  UnknownCluster,
  UnknownGroup,
  NotAMember,
  ScenarioInvalid,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (tests, the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nbcg
