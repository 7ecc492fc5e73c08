#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace istm {

enum class ErrorKind {
    input,
    degenerate_grid,
    quadrature,
    fit,
    evaluation,
    solver,
    singular_abel,
    range,
    pole,
    degenerate_eigenvalue,
    consistency,
    linear_solve,
    recovery_singularity,
    io,
};

std::string_view to_string(ErrorKind kind);

/// Numerical or input failure. The message carries the location (x, t, θ or node index)
/// where the failure was detected.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

template <class... Parts>
[[noreturn]] void fail(ErrorKind kind, const Parts&... parts) {
    std::ostringstream os;
    os.precision(17);
    os << to_string(kind) << " error: ";
    (os << ... << parts);
    throw Error(kind, os.str());
}

} // namespace istm
