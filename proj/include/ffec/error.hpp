#pragma once

#include <stdexcept>
#include <string>

namespace ffec {

/// Failure categories surfaced to callers and to the CLI exit path.
enum class ErrorKind {
  InvalidArgument,
  CapExceeded,
  Parse,
  NotElliptic,
  DegreeMismatch,
  Hypothesis,
  Inconclusive,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ffec
