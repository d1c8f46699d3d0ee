#include "setfam/errors.hpp"

namespace setfam {

const char* err_name(Err code) {
  switch (code) {
    case Err::DuplicateSet: return "DuplicateSet";
    case Err::ElementOutOfRange: return "ElementOutOfRange";
    case Err::UniverseTooLarge: return "UniverseTooLarge";
    case Err::NotPrime: return "NotPrime";
    case Err::SplitDegenerate: return "SplitDegenerate";
    case Err::BadBand: return "BadBand";
    case Err::BadBlockStructure: return "BadBlockStructure";
    case Err::FamilyOutsideBand: return "FamilyOutsideBand";
    case Err::PreconditionViolated: return "PreconditionViolated";
    case Err::ParseError: return "ParseError";
    case Err::IoError: return "IoError";
    case Err::Internal: return "Internal";
  }
  return "UnknownError";
}

}  // namespace setfam
