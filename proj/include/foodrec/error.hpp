#pragma once

#include <stdexcept>
#include <string>

namespace foodrec {

enum class ErrorKind {
  format,      // unparseable input
  validation,  // parsed but violates an invariant
  io,
  not_found,
  config,
  cold_start,  // user has no relevant training items
  protocol,    // evaluation protocol precondition broken
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace foodrec
