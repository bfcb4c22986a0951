#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orp {

enum class ErrorCode {
  EmptyWord,
  NotABorder,
  NotAPeriod,
  BadCover,
  NotConjugateForm,
  DegenerateOffset,
  HypothesisFail,
  TheoremViolation,
  IdentityLetter,
  Undecided,
  UnsupportedOrder,
  BadMatrix,
  OracleUnavailable,
  IllegalMove,
  NotSimplyConnected,
  NotMaximal,
  BadSplit,
  InvalidDescription,
  InvalidPicture,
  Parse,
};

std::string_view codeName(ErrorCode code);

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(codeName(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orp
