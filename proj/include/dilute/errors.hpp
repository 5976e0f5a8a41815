#pragma once

#include <stdexcept>
#include <string>

namespace dilute {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DILUTE_ERROR(Name)                    \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

DILUTE_ERROR(NonConvergence);
DILUTE_ERROR(SingularEndpoint);
DILUTE_ERROR(InvalidArgument);
DILUTE_ERROR(InvalidPotential);
DILUTE_ERROR(NoLogAsymptote);
DILUTE_ERROR(DensityTooHigh);
DILUTE_ERROR(FitDegenerate);
DILUTE_ERROR(DomainViolation);
DILUTE_ERROR(SplitMismatch);
DILUTE_ERROR(ConstraintViolated);
DILUTE_ERROR(NegativeD);
DILUTE_ERROR(PositiveMu);
DILUTE_ERROR(LogDomain);

#undef DILUTE_ERROR

}  // namespace dilute
