#pragma once

#include <stdexcept>
#include <string>

namespace netspace {

/// Error categories. The numeric values double as CLI exit statuses.
enum class Errc : int {
  invalid_argument = 3,
  parse = 4,
  io = 5,
  unsupported_exponent = 6,
  divergence = 7,
  undefined_ratio = 8,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace netspace
