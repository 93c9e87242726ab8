#pragma once

#include <stdexcept>
#include <string>

namespace evego {

/// Error category, doubling as the CLI process exit code.
enum class ErrorKind : int {
  Usage = 2,    // bad arguments, malformed requests
  Data = 3,     // malformed or inconsistent input data
  Numeric = 4,  // domain violations, degenerate geometry
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error usage_error(const std::string& what) { return Error(ErrorKind::Usage, what); }
inline Error data_error(const std::string& what) { return Error(ErrorKind::Data, what); }
inline Error numeric_error(const std::string& what) { return Error(ErrorKind::Numeric, what); }

}  // namespace evego
