#pragma once

#include <stdexcept>
#include <string>

namespace ctinform {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CTINFORM_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

CTINFORM_DEFINE_ERROR(InvalidMatrix);
CTINFORM_DEFINE_ERROR(NotPd);
CTINFORM_DEFINE_ERROR(InvalidProblem);
CTINFORM_DEFINE_ERROR(GridError);
CTINFORM_DEFINE_ERROR(DivergedError);
CTINFORM_DEFINE_ERROR(ResamplingError);
CTINFORM_DEFINE_ERROR(InvalidBudget);
CTINFORM_DEFINE_ERROR(StepsizeError);
CTINFORM_DEFINE_ERROR(ProvenanceError);
CTINFORM_DEFINE_ERROR(DimensionError);
CTINFORM_DEFINE_ERROR(InvalidArgument);
CTINFORM_DEFINE_ERROR(FormatError);

#undef CTINFORM_DEFINE_ERROR

}  // namespace ctinform
