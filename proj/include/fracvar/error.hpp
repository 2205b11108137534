#pragma once

#include <stdexcept>
#include <string>

namespace fracvar {

enum class ErrorKind {
  InvalidArgument,
  Domain,
  Pole,
  NoConvergence,
  Singular,
  MeshMismatch,
  Index,
  NonAffine,
};

/// Exception raised by every module of the library. The kind maps one-to-one
/// onto the status codes of the C interface.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace fracvar
