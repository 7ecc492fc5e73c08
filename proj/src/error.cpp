#include "istm/error.hpp"

namespace istm {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::degenerate_grid: return "degenerate-grid";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::fit: return "fit";
    case ErrorKind::evaluation: return "evaluation";
    case ErrorKind::solver: return "solver";
    case ErrorKind::singular_abel: return "singular-Abel";
    case ErrorKind::range: return "range";
    case ErrorKind::pole: return "pole";
    case ErrorKind::degenerate_eigenvalue: return "degenerate-eigenvalue";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::linear_solve: return "linear-solve";
    case ErrorKind::recovery_singularity: return "recovery-singularity";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

} // namespace istm
