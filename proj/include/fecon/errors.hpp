#pragma once

#include <stdexcept>
#include <string>

namespace fecon {

// Structured validation failures. `index` carries the first offending
// row/column/term where one exists, -1 otherwise.
enum class ErrorKind {
    NegativeEntry,
    RowSumViolation,
    ColSumViolation,
    OrderMismatch,
    MissingBlock,
    NonPartition,
    MatchingFailure,
    AdmissibilityViolation,
    EmptyCandidateSet,
    EmptySelection,
    ScenarioInvariant,
};

class ValidationError : public std::runtime_error {
  public:
    ValidationError(ErrorKind kind, const std::string& what, int index = -1)
        : std::runtime_error(what), kind_(kind), index_(index) {}

    ErrorKind kind() const noexcept { return kind_; }
    int index() const noexcept { return index_; }

  private:
    ErrorKind kind_;
    int index_;
};

const char* to_string(ErrorKind kind);

} // namespace fecon
