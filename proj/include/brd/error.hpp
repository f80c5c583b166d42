#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brd {

enum class ErrorKind {
    FlipViolation,
    RangeViolation,
    IndexOutOfRange,
    LanguageMismatch,
    NotIrreducible,
    NotInClass,
    EmptyClass,
    LevelBelowNode,
    CombinatorialExplosion,
    DomainIncomplete,
    LevelMismatch,
    ExtensionNotAboveSource,
    AmbientTooShallow,
    PrefixExhausted,
    CapExceeded,
    NotAnEnvelope,
    CritResolutionFailure,
    BudgetExhausted,
    CensusTooLarge,
    SelfCheckFailure,
    Parse,
};

std::string_view to_string(ErrorKind kind);

// Domain error raised by the library. The kind names the failing contract so
// the CLI can echo it verbatim.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace brd
