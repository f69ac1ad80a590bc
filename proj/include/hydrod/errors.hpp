#pragma once

#include <stdexcept>
#include <string>

namespace hydrod {

// Base class for every failure the library reports. Subclasses name the
// specific condition; name() returns it for reports and messages.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char *name() const noexcept { return "Error"; }
};

#define HYDROD_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
    const char *name() const noexcept override { return #Name; }              \
  }

HYDROD_DEFINE_ERROR(InvalidArgument);
HYDROD_DEFINE_ERROR(OutOfRange);
HYDROD_DEFINE_ERROR(DegenerateDenominator);
HYDROD_DEFINE_ERROR(TruncationNotConverged);
HYDROD_DEFINE_ERROR(StepUnderflow);
HYDROD_DEFINE_ERROR(BracketNotFound);
HYDROD_DEFINE_ERROR(TailNotNegligible);
HYDROD_DEFINE_ERROR(SolveFailed);
HYDROD_DEFINE_ERROR(IllConditioned);
HYDROD_DEFINE_ERROR(ZeroEpsilon);
HYDROD_DEFINE_ERROR(SplitMismatch);

#undef HYDROD_DEFINE_ERROR

} // namespace hydrod
