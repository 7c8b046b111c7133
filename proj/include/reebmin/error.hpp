#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reebmin {

enum class ErrorCode {
    InvalidArgument,
    InfeasibleSystem,
    NotFullDimensional,
    NotInReebCone,
    UnboundedCoefficient,
    TorsionCokernel,
    RankDeficient,
    EmptyFiber,
    TorsionQuotient,
    NotStrictlyConvex,
    Inconsistent,
    NonInvariant,
    SearchExhausted,
    TooLarge,
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every module reports failures through this exception; `code()` names the
/// failure mode so callers (and the CLI's structured error output) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace reebmin
