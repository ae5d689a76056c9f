#pragma once

#include <stdexcept>
#include <string>

namespace wg {

// Error codes shared across the library. Each corresponds to a named
// failure mode of one of the public operations.
enum class Errc {
  RANK_DEFICIENT,
  NOT_UNIMODULAR,
  UNSUPPORTED_DEGREE,
  NO_BOUND,
  AMBIENT_MISMATCH,
  BAD_WORD,
  NOT_SUBGROUP_CLOSED,
  FINITE_INDEX,
  NOT_FINITE_INDEX,
  ORDER_CAP_EXCEEDED,
  NOT_NORMAL,
  EIGENVALUE_ONE,
  INVALID_DESCRIPTOR,
  BAD_INPUT,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

} // namespace wg
