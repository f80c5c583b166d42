#include "brd/error.hpp"

namespace brd {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::FlipViolation: return "FlipViolation";
    case ErrorKind::RangeViolation: return "RangeViolation";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LanguageMismatch: return "LanguageMismatch";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotInClass: return "NotInClass";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::LevelBelowNode: return "LevelBelowNode";
    case ErrorKind::CombinatorialExplosion: return "CombinatorialExplosion";
    case ErrorKind::DomainIncomplete: return "DomainIncomplete";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::ExtensionNotAboveSource: return "ExtensionNotAboveSource";
    case ErrorKind::AmbientTooShallow: return "AmbientTooShallow";
    case ErrorKind::PrefixExhausted: return "PrefixExhausted";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotAnEnvelope: return "NotAnEnvelope";
    case ErrorKind::CritResolutionFailure: return "CritResolutionFailure";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::CensusTooLarge: return "CensusTooLarge";
    case ErrorKind::SelfCheckFailure: return "SelfCheckFailure";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace brd
