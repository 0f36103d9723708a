#pragma once

#include <stdexcept>
#include <string>

namespace corpusmap {

enum class ErrorKind {
  kInput,       // unreadable or malformed input data
  kValidation,  // well-formed input that violates a data invariant
  kConfig,      // pipeline configuration problems
  kInternal,    // broken internal consistency between stages
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error input_error(const std::string& what) {
  return Error(ErrorKind::kInput, what);
}
inline Error validation_error(const std::string& what) {
  return Error(ErrorKind::kValidation, what);
}
inline Error config_error(const std::string& what) {
  return Error(ErrorKind::kConfig, what);
}
inline Error internal_error(const std::string& what) {
  return Error(ErrorKind::kInternal, what);
}

}  // namespace corpusmap
