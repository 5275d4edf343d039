#include "starkcheck/error.hpp"

namespace starkcheck {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NonInvertible: return "NonInvertible";
    case Errc::NotAnAutomorphism: return "NotAnAutomorphism";
    case Errc::RefinementEscapedInterval: return "RefinementEscapedInterval";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::NotClosed: return "NotClosed";
    case Errc::NotAbelian: return "NotAbelian";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::NotGaloisStable: return "NotGaloisStable";
    case Errc::RoundingExceededTolerance: return "RoundingExceededTolerance";
    case Errc::ValuationUnavailable: return "ValuationUnavailable";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::ActionMismatch: return "ActionMismatch";
    case Errc::NotInLattice: return "NotInLattice";
    case Errc::NonIntegralCoefficients: return "NonIntegralCoefficients";
    case Errc::InfiniteIndex: return "InfiniteIndex";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::DominanceFailed: return "DominanceFailed";
    case Errc::SingularSubmatrix: return "SingularSubmatrix";
    case Errc::KernelRankNotOne: return "KernelRankNotOne";
    case Errc::RegulatorVanishes: return "RegulatorVanishes";
    case Errc::MissingLValue: return "MissingLValue";
    case Errc::ConjugationAsymmetry: return "ConjugationAsymmetry";
    case Errc::RecognitionFailed: return "RecognitionFailed";
    case Errc::UnsupportedRank: return "UnsupportedRank";
    case Errc::NonCyclicGroup: return "NonCyclicGroup";
    case Errc::ActionNotWellDefined: return "ActionNotWellDefined";
    case Errc::SchemaError: return "SchemaError";
    case Errc::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

bool is_precision_error(Errc c) {
    switch (c) {
    case Errc::PrecisionExhausted:
    case Errc::RoundingExceededTolerance:
    case Errc::NotInLattice:
    case Errc::RegulatorVanishes:
    case Errc::ConjugationAsymmetry:
    case Errc::RecognitionFailed:
    case Errc::DominanceFailed:
    case Errc::RefinementEscapedInterval:
        return true;
    default:
        return false;
    }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

static std::string join_issues(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& i : v) {
        if (!s.empty()) s += "; ";
        s += i;
    }
    return s;
}

ValidationError::ValidationError(Errc code, std::vector<std::string> issues)
    : Error(code, join_issues(issues)), issues_(std::move(issues)) {}

}  // namespace starkcheck
