#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace segode {

enum class ErrorKind {
    DivByZeroSeries,
    EvalAtPole,
    InvalidHypersurface,
    RelationsViolated,
    NotFuchsian,
    PoleAfterReduction,
    InconsistentInputs,
    DegenerateMap,
    NoRoot,
    BaseNotRoot,
    StepUnderflow,
    PathClearance,
    NotLinear,
    Psi1Vanishes,
    Singular,
    Schema,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries the name of the violated
// precondition so the CLI can report it verbatim.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return to_string(kind_); }

  private:
    ErrorKind kind_;
};

} // namespace segode
