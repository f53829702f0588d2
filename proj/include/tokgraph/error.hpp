#pragma once

#include <stdexcept>
#include <string>

namespace tokgraph {

// Bad arguments, shapes, or preconditions. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// File could not be opened, read, or written. The CLI maps this to exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A file was readable but its contents violate the declared layout.
class FormatError : public IoError {
 public:
  FormatError(std::string field, const std::string& what)
      : IoError(what), field_(std::move(field)) {}

  // Name of the first header field (or "payload") that failed validation.
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace tokgraph
