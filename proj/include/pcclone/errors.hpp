#pragma once

#include <stdexcept>
#include <string>

namespace pcclone {

// Base for every error raised by the library. Each failure mode gets its own
// type so callers can catch precisely; what() carries the numbers involved.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PCCLONE_DEFINE_ERROR(name)          \
  class name : public error {               \
   public:                                  \
    explicit name(const std::string& what)  \
        : error(#name ": " + what) {}       \
  }

PCCLONE_DEFINE_ERROR(DimensionMismatch);
PCCLONE_DEFINE_ERROR(IndexOutOfRange);
PCCLONE_DEFINE_ERROR(NotDensityMatrix);
PCCLONE_DEFINE_ERROR(NotNormalized);
PCCLONE_DEFINE_ERROR(BlochVectorTooLong);
PCCLONE_DEFINE_ERROR(NotTracePreserving);
PCCLONE_DEFINE_ERROR(NotCompletelyPositive);
PCCLONE_DEFINE_ERROR(NotPhaseCovariant);
PCCLONE_DEFINE_ERROR(InvalidN);
PCCLONE_DEFINE_ERROR(InvalidL);
PCCLONE_DEFINE_ERROR(InvalidRange);
PCCLONE_DEFINE_ERROR(TooFewNodes);
PCCLONE_DEFINE_ERROR(NormalizationViolated);
PCCLONE_DEFINE_ERROR(InfeasiblePoint);
PCCLONE_DEFINE_ERROR(NotConverged);

#undef PCCLONE_DEFINE_ERROR

}  // namespace pcclone
