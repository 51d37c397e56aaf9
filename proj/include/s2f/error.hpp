#pragma once

#include <stdexcept>
#include <string>

namespace s2f {

/// Failure classes. The CLI maps each one onto a process exit status.
enum class ErrorKind {
  Argument,    // caller passed an invalid value
  Io,          // file system failure
  Format,      // malformed PGM / s2f bytes or a corrupted motion field
  Capacity,    // watermark does not fit the cover
  Dimension,   // frame/image sizes disagree or violate the tiling rule
  Undefined,   // metric has no defined value for the input (e.g. zero variance)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace s2f
