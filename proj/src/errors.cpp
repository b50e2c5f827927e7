#include "fecon/errors.hpp"

namespace fecon {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NegativeEntry: return "negative entry";
        case ErrorKind::RowSumViolation: return "row sum violation";
        case ErrorKind::ColSumViolation: return "column sum violation";
        case ErrorKind::OrderMismatch: return "order mismatch";
        case ErrorKind::MissingBlock: return "missing block";
        case ErrorKind::NonPartition: return "not a partition";
        case ErrorKind::MatchingFailure: return "matching failure";
        case ErrorKind::AdmissibilityViolation: return "admissibility violation";
        case ErrorKind::EmptyCandidateSet: return "empty candidate set";
        case ErrorKind::EmptySelection: return "empty selection";
        case ErrorKind::ScenarioInvariant: return "scenario invariant";
    }
    return "?";
}

} // namespace fecon
