#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperarith {

enum class ErrorCode {
  BothZero,
  NotPrime,
  ZeroArgument,
  OutOfRange,
  MalformedFactorization,
  ParseError,
  SyntaxError,
  ArityError,
  UnboundVariable,
  UnknownBuiltin,
  BadParameter,
  Singular,
  PointNotOnCurve,
  InvalidMWData,
  SandwichViolation,
  DatasetViolation,
  UnsupportedTruthSet,
  UnsupportedValuation,
  DivisorVanishesCofinally,
  NotGenerating,
  OracleReplayMismatch,
  UnitIdeal,
  EmptyBase,
  NotPrincipal,
  WindowOverflow,
  EmptySubsemigroup,
  MalformedScenario,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::MalformedFactorization: return "MalformedFactorization";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::InvalidMWData: return "InvalidMWData";
    case ErrorCode::SandwichViolation: return "SandwichViolation";
    case ErrorCode::DatasetViolation: return "DatasetViolation";
    case ErrorCode::UnsupportedTruthSet: return "UnsupportedTruthSet";
    case ErrorCode::UnsupportedValuation: return "UnsupportedValuation";
    case ErrorCode::DivisorVanishesCofinally: return "DivisorVanishesCofinally";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::OracleReplayMismatch: return "OracleReplayMismatch";
    case ErrorCode::UnitIdeal: return "UnitIdeal";
    case ErrorCode::EmptyBase: return "EmptyBase";
    case ErrorCode::NotPrincipal: return "NotPrincipal";
    case ErrorCode::WindowOverflow: return "WindowOverflow";
    case ErrorCode::EmptySubsemigroup: return "EmptySubsemigroup";
    case ErrorCode::MalformedScenario: return "MalformedScenario";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Formula text errors keep the 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(ErrorCode::SyntaxError,
              msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Dataset loader failures name the offending record (0-based).
class DatasetError : public Error {
 public:
  DatasetError(std::size_t record, const std::string& msg)
      : Error(ErrorCode::DatasetViolation, "record " + std::to_string(record) + ": " + msg),
        record_(record) {}

  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

}  // namespace hyperarith
