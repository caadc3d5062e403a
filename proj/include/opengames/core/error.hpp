#pragma once

#include <stdexcept>
#include <string>

namespace opengames {

// Base of every error raised by the library. Subclasses name the failure
// kind so callers can catch narrowly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define OPENGAMES_DEFINE_ERROR(Name)        \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  };

OPENGAMES_DEFINE_ERROR(InvalidSpace)
OPENGAMES_DEFINE_ERROR(InvalidPoint)
OPENGAMES_DEFINE_ERROR(SpaceMismatch)
OPENGAMES_DEFINE_ERROR(NotEnumerable)
OPENGAMES_DEFINE_ERROR(CapExceeded)
OPENGAMES_DEFINE_ERROR(SearchTooLarge)
OPENGAMES_DEFINE_ERROR(DimensionMismatch)
OPENGAMES_DEFINE_ERROR(InvalidParameters)
OPENGAMES_DEFINE_ERROR(EmptySuccessorSet)
OPENGAMES_DEFINE_ERROR(AmbiguousRealSuccessor)

#undef OPENGAMES_DEFINE_ERROR

}  // namespace opengames
