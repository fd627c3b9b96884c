#pragma once

#include <stdexcept>
#include <string>

namespace algd {

// Base of every library error. kind() is the stable name used in reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

#define ALGD_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    using Error::Error;                                           \
    const char* kind() const noexcept override { return #Name; }  \
  }

ALGD_DEFINE_ERROR(DivisionByZero);
ALGD_DEFINE_ERROR(UnknownVariable);
ALGD_DEFINE_ERROR(DenominatorVanishes);
ALGD_DEFINE_ERROR(ContextMismatch);
ALGD_DEFINE_ERROR(RankMismatch);
ALGD_DEFINE_ERROR(DegreeError);
ALGD_DEFINE_ERROR(ChartMismatch);
ALGD_DEFINE_ERROR(StructureMismatch);
ALGD_DEFINE_ERROR(NotIsotropic);
ALGD_DEFINE_ERROR(NotLinear);
ALGD_DEFINE_ERROR(PairingMismatch);
ALGD_DEFINE_ERROR(InconsistentPresentation);
ALGD_DEFINE_ERROR(CompositionNotExpB);
ALGD_DEFINE_ERROR(MissingSimplex);
ALGD_DEFINE_ERROR(CocycleViolation);
ALGD_DEFINE_ERROR(PrimitiveInvalid);
ALGD_DEFINE_ERROR(FrameInvalid);
ALGD_DEFINE_ERROR(NoSolutionWithinBound);
ALGD_DEFINE_ERROR(NotClosed);
ALGD_DEFINE_ERROR(ParseError);
ALGD_DEFINE_ERROR(ValidationError);
ALGD_DEFINE_ERROR(AssertionFailure);

#undef ALGD_DEFINE_ERROR

}  // namespace algd
