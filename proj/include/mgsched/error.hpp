#pragma once

#include <stdexcept>
#include <string>

namespace mgsched {

enum class Errc {
  invalid_argument,
  invalid_instance,
  empty_schedule,
  empty_buffer,
  size_limit,
  premise_violation,
  domain_error,
  infeasible_spec,
  io_error,
  parse_error,
  invariant_violation,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C boundary can map it onto a status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mgsched
