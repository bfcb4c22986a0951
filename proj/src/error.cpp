#include "orp/error.hpp"

namespace orp {

std::string_view codeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyWord: return "EMPTY_WORD";
    case ErrorCode::NotABorder: return "NOT_A_BORDER";
    case ErrorCode::NotAPeriod: return "NOT_A_PERIOD";
    case ErrorCode::BadCover: return "BAD_COVER";
    case ErrorCode::NotConjugateForm: return "NOT_CONJUGATE_FORM";
    case ErrorCode::DegenerateOffset: return "DEGENERATE_OFFSET";
    case ErrorCode::HypothesisFail: return "HYPOTHESIS_FAIL";
    case ErrorCode::TheoremViolation: return "THEOREM_VIOLATION";
    case ErrorCode::IdentityLetter: return "IDENTITY_LETTER";
    case ErrorCode::Undecided: return "UNDECIDED";
    case ErrorCode::UnsupportedOrder: return "UNSUPPORTED_ORDER";
    case ErrorCode::BadMatrix: return "BAD_MATRIX";
    case ErrorCode::OracleUnavailable: return "ORACLE_UNAVAILABLE";
    case ErrorCode::IllegalMove: return "ILLEGAL_MOVE";
    case ErrorCode::NotSimplyConnected: return "NOT_SIMPLY_CONNECTED";
    case ErrorCode::NotMaximal: return "NOT_MAXIMAL";
    case ErrorCode::BadSplit: return "BAD_SPLIT";
    case ErrorCode::InvalidDescription: return "INVALID_DESCRIPTION";
    case ErrorCode::InvalidPicture: return "INVALID_PICTURE";
    case ErrorCode::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

}  // namespace orp
