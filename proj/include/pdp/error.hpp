#pragma once

#include <stdexcept>
#include <string>

namespace pdp {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map the whole family onto a single exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PDP_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(what) {}      \
  }

PDP_DEFINE_ERROR(NonPlanarError);
PDP_DEFINE_ERROR(MalformedRotationError);
PDP_DEFINE_ERROR(ParseError);
PDP_DEFINE_ERROR(ValidationError);
PDP_DEFINE_ERROR(InvalidTerminalError);
PDP_DEFINE_ERROR(SizeLimitExceeded);
PDP_DEFINE_ERROR(ResourceLimitError);
PDP_DEFINE_ERROR(BudgetExceededError);
PDP_DEFINE_ERROR(DisconnectedError);
PDP_DEFINE_ERROR(PathTooShortError);
PDP_DEFINE_ERROR(InvalidSolutionError);

#undef PDP_DEFINE_ERROR

}  // namespace pdp
