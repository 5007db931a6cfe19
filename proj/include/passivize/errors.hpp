#ifndef PASSIVIZE_ERRORS_HPP
#define PASSIVIZE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace passivize {

// Base class for all library errors. Validation errors (bad input data)
// derive from ValidationError so the CLI can map them to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

#define PASSIVIZE_ERROR(Name, Base)            \
  struct Name : Base {                         \
    explicit Name(const std::string& msg)      \
        : Base(std::string(#Name ": ") + msg) {} \
  }

PASSIVIZE_ERROR(NonHermitianInput, ValidationError);
PASSIVIZE_ERROR(NonUnitaryInput, ValidationError);
PASSIVIZE_ERROR(DimensionMismatch, ValidationError);
PASSIVIZE_ERROR(NonHermitianGenerator, ValidationError);
PASSIVIZE_ERROR(NegativeTime, ValidationError);
PASSIVIZE_ERROR(UnsortedObservable, ValidationError);
PASSIVIZE_ERROR(NotAProbabilityVector, ValidationError);
PASSIVIZE_ERROR(InvalidSpec, ValidationError);
PASSIVIZE_ERROR(SpectrumMismatch, ValidationError);
PASSIVIZE_ERROR(NotBivalent, ValidationError);
PASSIVIZE_ERROR(NotAnInvolution, ValidationError);
PASSIVIZE_ERROR(NotInvolution, ValidationError);
PASSIVIZE_ERROR(NotPassivizing, ValidationError);
PASSIVIZE_ERROR(DegenerateSpectrum, ValidationError);
PASSIVIZE_ERROR(MethodPreconditionFailed, ValidationError);
PASSIVIZE_ERROR(BandwidthMismatch, ValidationError);
PASSIVIZE_ERROR(UnsupportedFormat, ValidationError);
PASSIVIZE_ERROR(UnknownCommand, ValidationError);

PASSIVIZE_ERROR(DimensionTooLargeForEnumeration, Error);
PASSIVIZE_ERROR(DimensionTooLarge, Error);
PASSIVIZE_ERROR(TooLarge, Error);
PASSIVIZE_ERROR(NestingViolation, Error);
PASSIVIZE_ERROR(UnclassifiedBlock, Error);
PASSIVIZE_ERROR(NoConvergence, Error);
PASSIVIZE_ERROR(FormulaMismatch, Error);

#undef PASSIVIZE_ERROR

}  // namespace passivize

#endif
