#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plancomp {

enum class ErrorCode {
  // input files
  Io,
  MissingHeader,
  BadField,
  DuplicateKey,
  ParseError,
  UnknownLevel,
  EmptyProblemList,
  DuplicateProblem,
  // numeric / statistical preconditions
  EmptyInput,
  NonFiniteInput,
  DomainError,
  TooLarge,
  NonPositiveValue,
  TooFewPairs,
  LengthMismatch,
  RaggedMatrix,
  InvalidRankRow,
  // analysis preconditions
  PlannerNotInLevel,
  NoProblems,
  MixedLevels,
  InconsistentComparisons,
  EmptyPool,
  SampleSizeMismatch,
  TooFewJudges,
  EmptyDomainList,
  UnknownCell,
  InvalidConfig,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A rejected input row. `row` is the 1-based line number in the source file.
class RowError : public Error {
 public:
  RowError(ErrorCode code, std::size_t row, std::string column, const std::string& reason);

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

}  // namespace plancomp
