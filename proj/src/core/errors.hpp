#pragma once

#include <stdexcept>
#include <string>

namespace bhe {

// Error taxonomy mirrors the CLI exit codes: config=2, physics=3,
// numeric=4, io=5.
enum class ErrorKind { config = 2, physics = 3, numeric = 4, io = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) {
  throw Error(ErrorKind::config, msg);
}
[[noreturn]] inline void throw_physics(const std::string& msg) {
  throw Error(ErrorKind::physics, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
  throw Error(ErrorKind::numeric, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
  throw Error(ErrorKind::io, msg);
}

}  // namespace bhe
