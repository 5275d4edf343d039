#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace starkcheck {

enum class Errc {
    DivisionByZero,
    NonInvertible,
    NotAnAutomorphism,
    RefinementEscapedInterval,
    PrecisionExhausted,
    NotClosed,
    NotAbelian,
    NoIdentity,
    DomainMismatch,
    NotGaloisStable,
    RoundingExceededTolerance,
    ValuationUnavailable,
    HypothesisViolated,
    ActionMismatch,
    NotInLattice,
    NonIntegralCoefficients,
    InfiniteIndex,
    SingularMatrix,
    DominanceFailed,
    SingularSubmatrix,
    KernelRankNotOne,
    RegulatorVanishes,
    MissingLValue,
    ConjugationAsymmetry,
    RecognitionFailed,
    UnsupportedRank,
    NonCyclicGroup,
    ActionNotWellDefined,
    SchemaError,
    ValidationError,
};

const char* errc_name(Errc c);

// Errors that a rerun at higher precision may cure.
bool is_precision_error(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Raised by bundle parsing; carries every violation found, not just the first.
class ValidationError : public Error {
public:
    ValidationError(Errc code, std::vector<std::string> issues);
    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

}  // namespace starkcheck
