#pragma once

#include <stdexcept>
#include <string>

namespace chainmf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CHAINMF_DECLARE_ERROR(Name) \
  class Name : public Error {       \
   public:                          \
    using Error::Error;             \
  }

CHAINMF_DECLARE_ERROR(NonPositiveExponent);
CHAINMF_DECLARE_ERROR(GroupMismatch);
CHAINMF_DECLARE_ERROR(RankError);
CHAINMF_DECLARE_ERROR(NonPositiveWeight);
CHAINMF_DECLARE_ERROR(PotentialMismatch);
CHAINMF_DECLARE_ERROR(DegreeMismatch);
CHAINMF_DECLARE_ERROR(ShapeMismatch);
CHAINMF_DECLARE_ERROR(IndexOutOfRange);
CHAINMF_DECLARE_ERROR(ExponentTooSmall);
CHAINMF_DECLARE_ERROR(CyclicQuiver);
CHAINMF_DECLARE_ERROR(ParseError);

#undef CHAINMF_DECLARE_ERROR

}  // namespace chainmf
