#pragma once

#include <stdexcept>
#include <string>

namespace levy_smile {

// Every failure raised by the library derives from Error so callers can catch
// one type at the boundary (the CLI maps it to an exit code).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LEVY_SMILE_ERROR(Name)                 \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(#Name ": " + what) {}          \
  }

LEVY_SMILE_ERROR(InvalidInput);
LEVY_SMILE_ERROR(InvalidModel);
LEVY_SMILE_ERROR(FrequencyOutOfStrip);
LEVY_SMILE_ERROR(MomentConditionFailed);
LEVY_SMILE_ERROR(PriceOutOfBounds);
LEVY_SMILE_ERROR(NoConvergence);
LEVY_SMILE_ERROR(DampingOutOfStrip);
LEVY_SMILE_ERROR(QuadratureNoConvergence);
LEVY_SMILE_ERROR(ExpansionOutsideDomain);
LEVY_SMILE_ERROR(UncoveredCase);
LEVY_SMILE_ERROR(InvalidCutoff);
LEVY_SMILE_ERROR(ConfigError);

#undef LEVY_SMILE_ERROR

}  // namespace levy_smile
