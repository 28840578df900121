#include "ladder/error.hpp"

namespace ladder {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::Decomposition: return "DecompositionInconsistency";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ZeroMassRow: return "ZeroMassRow";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::MissingField: return "MissingField";
    }
    return "Unknown";
}

}  // namespace ladder
