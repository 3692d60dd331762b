#pragma once

#include <stdexcept>
#include <string>

namespace ternion {

//! Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define TERNION_DECLARE_ERROR(Name)        \
    class Name : public Error {            \
      public:                              \
        using Error::Error;                \
    };

TERNION_DECLARE_ERROR(SingularNumber)
TERNION_DECLARE_ERROR(DomainError)
TERNION_DECLARE_ERROR(Overflow)
TERNION_DECLARE_ERROR(NumericalBreakdown)
TERNION_DECLARE_ERROR(QuadratureFailure)
TERNION_DECLARE_ERROR(SingularOnPath)
TERNION_DECLARE_ERROR(NotHolomorphic)
TERNION_DECLARE_ERROR(OnSingularSet)
TERNION_DECLARE_ERROR(StepFailure)
TERNION_DECLARE_ERROR(NoSecondSolution)
TERNION_DECLARE_ERROR(RootFindingFailure)
TERNION_DECLARE_ERROR(PoleOnRange)
TERNION_DECLARE_ERROR(JacobianSingular)
TERNION_DECLARE_ERROR(ConfigError)

#undef TERNION_DECLARE_ERROR

}  // namespace ternion
