#pragma once

#include <stdexcept>
#include <string>

namespace setfam {

// Every precondition failure in the library throws Error with one of these
// codes.  The CLI maps ParseError/BadArgument-style codes to exit status 2
// and everything else to 3; library callers can switch on code().
enum class Err {
  DuplicateSet,
  ElementOutOfRange,
  UniverseTooLarge,
  NotPrime,
  SplitDegenerate,
  BadBand,
  BadBlockStructure,
  FamilyOutsideBand,
  PreconditionViolated,
  ParseError,
  IoError,
  Internal,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message),
        code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace setfam
