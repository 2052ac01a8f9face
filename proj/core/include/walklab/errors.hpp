#pragma once

#include <stdexcept>
#include <string>

namespace walklab {

enum class ErrorKind {
  config,           // unsupported field order, bad CLI parameters
  domain,           // argument outside the operation's domain
  rank,             // linearly dependent input where independence is required
  structure,        // malformed chain/flag/matrix structure
  resource,         // enumeration or memory budget exceeded
  invalid_quotient  // labeling is not equitable
};

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

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace walklab
