#pragma once

#include <stdexcept>
#include <string>

namespace sc {

enum class Status {
  ok = 0,
  invalid_input,
  structural,
  validation,
  resource,
  construction,
  invariant_violation,
  malformed,
  not_surface,
  io,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Status code() const { return code_; }

 private:
  Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace sc
