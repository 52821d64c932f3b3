#pragma once

#include <stdexcept>
#include <string>

namespace cmkdv {

// Two families: configuration/input problems and numerical failures. The CLI
// maps them to exit codes 2 and 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

#define CMKDV_DEFINE_ERROR(Name, Base)                      \
  class Name : public Base {                                \
   public:                                                  \
    using Base::Base;                                       \
    const char* kind() const noexcept override { return #Name; } \
  };

CMKDV_DEFINE_ERROR(DomainError, ConfigError)
CMKDV_DEFINE_ERROR(BadProfileSpec, ConfigError)
CMKDV_DEFINE_ERROR(BackgroundMismatch, ConfigError)
CMKDV_DEFINE_ERROR(NonDecayingProfile, ConfigError)
CMKDV_DEFINE_ERROR(OutOfRange, ConfigError)
CMKDV_DEFINE_ERROR(OutsideTransitionRegion, ConfigError)
CMKDV_DEFINE_ERROR(WindowTooLarge, ConfigError)
CMKDV_DEFINE_ERROR(OnContour, ConfigError)
CMKDV_DEFINE_ERROR(GridMismatch, ConfigError)
CMKDV_DEFINE_ERROR(InvalidConfig, ConfigError)

CMKDV_DEFINE_ERROR(NearSingularSpectralParam, NumericalError)
CMKDV_DEFINE_ERROR(SpectrumResolutionError, NumericalError)
CMKDV_DEFINE_ERROR(DegenerateZero, NumericalError)
CMKDV_DEFINE_ERROR(SingularReflection, NumericalError)
CMKDV_DEFINE_ERROR(QuadratureError, NumericalError)
CMKDV_DEFINE_ERROR(BlowupDetected, NumericalError)
CMKDV_DEFINE_ERROR(StabilityViolation, NumericalError)

#undef CMKDV_DEFINE_ERROR

}  // namespace cmkdv
