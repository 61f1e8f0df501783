#pragma once

#include <stdexcept>
#include <string>

namespace holon {

enum class Errc {
    DuplicateId,
    UnknownHolon,
    UnknownCapability,
    UnknownNode,
    UnknownComposition,
    TrustedEntityUnreachable,
    UninitializedCandidate,
    NotACandidate,
    AlreadyVoted,
    WrongPhase,
    MergeRejected,
    EmptyParticipants,
    NotAMember,
    NotAParticipant,
    MissingScore,
    CompositionsNotMerged,
    SyntaxError,
    TypeError,
    ParseError,
    UnresolvedReference,
    MalformedAssertion,
    InvariantViolation,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

// Runtime invariant checks stay on in every build; a violation aborts the run
// with exit code 1 at the CLI boundary.
#define HOLON_ASSERT(cond, msg)                                                       \
    do {                                                                              \
        if (!(cond)) {                                                                \
            ::holon::raise(::holon::Errc::InvariantViolation,                         \
                           std::string(msg) + " [" #cond "] at " __FILE__ ":" +       \
                               std::to_string(__LINE__));                             \
        }                                                                             \
    } while (0)

} // namespace holon
