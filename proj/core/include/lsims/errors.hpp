#ifndef LSIMS_ERRORS_HPP
#define LSIMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lsims {

/// Base class for all solver errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LSIMS_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

// linalg
LSIMS_DEFINE_ERROR(NotPositiveDefinite);
LSIMS_DEFINE_ERROR(MassNotSpd);
LSIMS_DEFINE_ERROR(RankDeficientConstraints);
LSIMS_DEFINE_ERROR(EmptyBasis);
LSIMS_DEFINE_ERROR(MaxIterations);

// fields
LSIMS_DEFINE_ERROR(UnknownKind);
LSIMS_DEFINE_ERROR(MalformedRaster);
LSIMS_DEFINE_ERROR(DimensionMismatch);

// assembly / local basis
LSIMS_DEFINE_ERROR(EmptySubdomain);
LSIMS_DEFINE_ERROR(DegenerateInit);
LSIMS_DEFINE_ERROR(InsufficientVectors);
LSIMS_DEFINE_ERROR(TooLarge);

// coarse space
LSIMS_DEFINE_ERROR(BadSplitCount);
LSIMS_DEFINE_ERROR(EmptyExplicitSpace);
LSIMS_DEFINE_ERROR(EmptySplit);

// time stepping
LSIMS_DEFINE_ERROR(StabilityViolation);
LSIMS_DEFINE_ERROR(BlowUp);

// metrics
LSIMS_DEFINE_ERROR(ZeroReference);
LSIMS_DEFINE_ERROR(TimeGridMismatch);

// configuration / io
LSIMS_DEFINE_ERROR(ConfigError);
LSIMS_DEFINE_ERROR(IoError);

#undef LSIMS_DEFINE_ERROR

}  // namespace lsims

#endif
