#ifndef MODSUP_CHECK_HPP
#define MODSUP_CHECK_HPP

#include <optional>
#include <string>

#include "modsup/alphabet.hpp"

namespace modsup {

enum class ViolationKind {
    InclusionViolation,
    ControllabilityViolation,
    Blocking,
    CdViolation,
    ObserverViolation,
    NonconflictViolation,
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::InclusionViolation: return "inclusion-violation";
        case ViolationKind::ControllabilityViolation: return "controllability-violation";
        case ViolationKind::Blocking: return "blocking";
        case ViolationKind::CdViolation: return "cd-violation";
        case ViolationKind::ObserverViolation: return "observer-violation";
        case ViolationKind::NonconflictViolation: return "nonconflict-violation";
    }
    return "unknown";
}

/// Evidence that a checked property fails. `word` replays on the generator
/// it indicts and is minimal in length-lexicographic order. Observer
/// violations additionally carry the abstract continuation that cannot be
/// matched, in `target_word`.
struct Counterexample {
    Word word;
    ViolationKind reason = ViolationKind::InclusionViolation;
    std::optional<Word> target_word;
    std::string note;
};

/// Outcome of a decision procedure: true, or false with a counterexample.
struct CheckResult {
    std::optional<Counterexample> violation;

    bool ok() const { return !violation.has_value(); }
    explicit operator bool() const { return ok(); }

    static CheckResult pass() { return CheckResult{}; }
    static CheckResult fail(Counterexample c) { return CheckResult{std::move(c)}; }
};

} // namespace modsup

#endif
