#pragma once

#include <stdexcept>
#include <string>

namespace zidlab {

enum class ErrorKind {
  Validation, // bad map text, bad config, bad arguments
  Runtime,    // state cap exceeded, no winning walk, io failure, ...
};

class ZidError : public std::runtime_error {
public:
  ZidError(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string &msg) {
  throw ZidError(ErrorKind::Validation, msg);
}

[[noreturn]] inline void fail_runtime(const std::string &msg) {
  throw ZidError(ErrorKind::Runtime, msg);
}

} // namespace zidlab
