#include "foodrec/error.hpp"

namespace foodrec {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::format: return "format";
    case ErrorKind::validation: return "validation";
    case ErrorKind::io: return "io";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::config: return "config";
    case ErrorKind::cold_start: return "cold_start";
    case ErrorKind::protocol: return "protocol";
  }
  return "unknown";
}

}  // namespace foodrec
