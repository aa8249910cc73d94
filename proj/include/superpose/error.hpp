#pragma once

#include <stdexcept>
#include <string>

namespace superpose {

enum class ErrorKind {
  Dimension,
  Parameter,
  Degenerate,
  Singular,
  Construction,
  Guard,
  Precondition,
  Contract,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

// All failures raised by the library carry a kind so the C boundary can map
// them to status codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace superpose
