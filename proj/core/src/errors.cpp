#include "holon/errors.hpp"

namespace holon {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownHolon: return "UnknownHolon";
    case Errc::UnknownCapability: return "UnknownCapability";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownComposition: return "UnknownComposition";
    case Errc::TrustedEntityUnreachable: return "TrustedEntityUnreachable";
    case Errc::UninitializedCandidate: return "UninitializedCandidate";
    case Errc::NotACandidate: return "NotACandidate";
    case Errc::AlreadyVoted: return "AlreadyVoted";
    case Errc::WrongPhase: return "WrongPhase";
    case Errc::MergeRejected: return "MergeRejected";
    case Errc::EmptyParticipants: return "EmptyParticipants";
    case Errc::NotAMember: return "NotAMember";
    case Errc::NotAParticipant: return "NotAParticipant";
    case Errc::MissingScore: return "MissingScore";
    case Errc::CompositionsNotMerged: return "CompositionsNotMerged";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::TypeError: return "TypeError";
    case Errc::ParseError: return "ParseError";
    case Errc::UnresolvedReference: return "UnresolvedReference";
    case Errc::MalformedAssertion: return "MalformedAssertion";
    case Errc::InvariantViolation: return "InvariantViolation";
    }
    return "UnknownError";
}

} // namespace holon
