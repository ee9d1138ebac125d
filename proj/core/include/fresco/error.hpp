#pragma once

#include <stdexcept>
#include <string>

namespace fresco {

/// Base class for every error raised by the library. The message is the
/// short, stable diagnostic ("degenerate polygon", "not mergeable", ...)
/// optionally followed by context after a colon.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for bad user-supplied input (files, labels, flags). The CLI maps
/// this to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace fresco
