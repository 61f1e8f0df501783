#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "holon/crypto.hpp"
#include "holon/holon.hpp"
#include "holon/value.hpp"

namespace holon {

struct Certificate {
    HolonId subject;
    Bytes public_key;
    Tick issued_at{0};
    std::uint64_t serial{0};  // issuance counter; later certificates supersede earlier ones
    Bytes issuer_signature;

    /// Bytes covered by the issuer signature.
    Bytes signed_payload() const;
};

struct VotingConfig {
    double formation_threshold{1.0};  // fraction of yes votes needed to form, in (0,1]
    double change_threshold{0.5};     // fraction needed for membership changes, in (0,1]
    Tick vote_timeout{50};

    void validate() const;
};

// --- Composition protocol messages (Initialization / Coalition / Voting) ---

struct CertRequest {
    HolonId holon;
    Bytes public_key;  // generated holon-side; the certificate binds it
};
struct CertGrant {
    Certificate cert;
    SecretId channel;  // per-holon sealing channel for trusted-entity traffic
};
struct ProposalSubmit {
    std::string proposal_id;
    HolonId initiator;
    std::vector<HolonId> candidates;
    VotingConfig voting;
};
struct SecretDistribute {
    std::string composition_id;
    SecretId secret;
};
struct VoteRequest {
    std::string proposal_id;
    HolonId candidate;
    std::string subject;  // human-readable description of what is being voted on
};
struct VoteCastMsg {
    std::string proposal_id;
    HolonId voter;
    bool yes{false};
};
struct CompositionFinalizedMsg {
    std::string composition_id;
    std::string proposal_id;
    std::vector<HolonId> members;
};
struct CompositionRejectedMsg {
    std::string proposal_id;
};
struct MemberChangeProposalMsg {
    std::string proposal_id;
    std::string composition_id;
    HolonId candidate;
    bool add{true};
};
struct MemberChangeResultMsg {
    std::string proposal_id;
    std::string composition_id;
    bool accepted{false};
    HolonId candidate;
    bool add{true};
};

// --- Collaboration-layer messages ---

struct StateWriteMsg {
    std::string collab_id;
    HolonId writer;
    std::string path;
    Value value;
    std::uint64_t stamp{0};
};
struct SensationReportMsg {  // participant -> mediator
    std::string collab_id;
    Sensation sensation;
};
struct SensationForwardMsg {  // mediator -> collaborator
    std::string collab_id;
    Sensation sensation;
};
struct AlertMsg {  // mediator -> role holon: dispatch your team to loc
    std::string collab_id;
    std::string role;
    std::string resource;    // bound resource that travels
    std::string reply_path;  // shared path to set to "on_site" on arrival
    Location loc;
};

using Message =
    std::variant<CertRequest, CertGrant, ProposalSubmit, SecretDistribute, VoteRequest,
                 VoteCastMsg, CompositionFinalizedMsg, CompositionRejectedMsg,
                 MemberChangeProposalMsg, MemberChangeResultMsg, StateWriteMsg,
                 SensationReportMsg, SensationForwardMsg, AlertMsg>;

/// Canonical binary form: tag byte, then fields in declaration order.
/// Strings are u32-LE length-prefixed UTF-8, times and stamps u64-LE tick
/// counts, decimals IEEE-754 bits LE, maps in sorted key order. Identical
/// messages encode to identical bytes on every run.
Bytes encode_message(const Message& m);
Message decode_message(std::span<const std::uint8_t> bytes);

std::uint64_t message_hash(const Message& m);
const char* message_type_name(const Message& m);

} // namespace holon
