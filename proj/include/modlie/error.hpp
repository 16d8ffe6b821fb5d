#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modlie {

/// Failure categories raised by the library. The CLI maps them onto exit codes.
enum class ErrorCode {
  ZeroInverse,
  BadChar,
  NotOdd,
  WrongChar,
  NotHomogeneous,
  UnsupportedChar,
  BadSize,
  IncompatibleKind,
  ActionMismatch,
  FormDegenerate,
  NotConformal,
  NotSubmodule,
  ClosureFailure,
  NotClosed,
  NotDiagonalizable,
  NonIntegralSpectrum,
  Inconclusive,
  NotSquaringClosed,
  NotSemisimpleSplit,
  InvalidInput,
  Internal,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::BadChar: return "BadChar";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::WrongChar: return "WrongChar";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::UnsupportedChar: return "UnsupportedChar";
    case ErrorCode::BadSize: return "BadSize";
    case ErrorCode::IncompatibleKind: return "IncompatibleKind";
    case ErrorCode::ActionMismatch: return "ActionMismatch";
    case ErrorCode::FormDegenerate: return "FormDegenerate";
    case ErrorCode::NotConformal: return "NotConformal";
    case ErrorCode::NotSubmodule: return "NotSubmodule";
    case ErrorCode::ClosureFailure: return "ClosureFailure";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::NonIntegralSpectrum: return "NonIntegralSpectrum";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::NotSquaringClosed: return "NotSquaringClosed";
    case ErrorCode::NotSemisimpleSplit: return "NotSemisimpleSplit";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace modlie
