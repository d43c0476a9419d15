#pragma once

#include <stdexcept>
#include <string>

namespace nilfold {

// Error taxonomy shared by the library and the CLI exit-code mapping.
enum class Errc {
  DimensionMismatch,
  DegreeTooHigh,
  IdentityAxiomViolated,
  SetsNotDisjoint,
  EmptyOrbit,
  RootIsolationFailed,
  AllPointsBoundary,
  GridTooCoarse,
  TooShort,
  WitnessInvalid,
  HypothesisViolated,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace nilfold
