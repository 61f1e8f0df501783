#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "holon/condition.hpp"
#include "holon/crypto.hpp"
#include "holon/holon.hpp"
#include "holon/simnet.hpp"
#include "holon/trace.hpp"
#include "holon/wire.hpp"

namespace holon {

enum class ProposalPhase { Coalition, Voting, Finalized, Rejected };
enum class RuleAction { Discover, Invite, Exclude };

RuleAction rule_action_from_name(const std::string& s);
const char* rule_action_name(RuleAction a);

struct MembershipRule {
    dsl::ExprPtr condition;
    std::string condition_src;
    RuleAction action{RuleAction::Discover};
    std::string target_capability;  // capability the discovered holons must offer
};

/// A finalized composition. It is itself a holon: the id is registered in the
/// holon registry and merged compositions record their parents.
struct CompositionRecord {
    HolonId composition_id;
    std::set<HolonId> members;
    SecretId current_secret;  // rotated on every membership change
    std::vector<MembershipRule> rules;
    std::set<std::string> behaviours;
    std::vector<HolonId> parents;
    VotingConfig voting;
};

struct CompositionProposal {
    enum class Kind { Formation, MemberChange, MergeSide };

    std::string proposal_id;
    Kind kind{Kind::Formation};
    HolonId initiator;
    std::vector<HolonId> candidates;  // the voters
    std::vector<MembershipRule> rules;
    VotingConfig voting;
    double threshold{1.0};
    ProposalPhase phase{ProposalPhase::Coalition};
    std::map<HolonId, bool> votes;
    SecretId pending_secret;  // generated in the coalition phase, released on success

    // Formation
    std::string composition_id;
    // MemberChange
    HolonId change_candidate;
    bool change_add{true};
    // MergeSide
    std::string merge_id;

    Network::CancelToken timeout_token;
};

struct MergeJob {
    std::string merge_id;
    HolonId comp_a, comp_b;
    std::string merged_id;
    std::map<std::string, bool> side_results;  // proposal_id -> accepted
    int sides_pending{0};
    bool failed{false};
};

struct DiscoveryAction {
    std::size_t rule_index{0};
    RuleAction action{RuleAction::Discover};
    std::vector<HolonId> targets;
};

/// The distinguished trusted-entity node: issues certificates, runs proposal
/// voting, generates and distributes composition secrets, and owns the
/// authoritative composition records. It is reachable exactly as far as the
/// network says it is.
class TrustedEntity {
public:
    TrustedEntity(std::string node_id, Network& net, CryptoProvider& crypto,
                  HolonRegistry& registry, TraceSink& trace);

    const std::string& node_id() const { return node_id_; }

    /// Network handler, to be registered by the owner.
    void on_message(const Envelope& env);

    Certificate issue_certificate(const HolonId& subject, const Bytes& public_key);
    bool certificate_current(const Certificate& cert) const;
    const Bytes& public_key() const { return keys_.public_key; }

    /// Starts voting for a formation proposal; VoteRequests go out to every
    /// candidate. Caller has already validated the candidates.
    void start_formation(const std::string& proposal_id, const HolonId& initiator,
                         const std::vector<HolonId>& candidates, std::vector<MembershipRule> rules,
                         const VotingConfig& voting, const std::string& composition_id);

    void start_member_change(const std::string& proposal_id, const std::string& composition_id,
                             const HolonId& candidate, bool add);

    /// Creates one internal vote per side; the merged record appears when all
    /// sides accept. For a self-merge a single side votes.
    void start_merge(const std::string& merge_id, const HolonId& a, const HolonId& b,
                     const std::string& merged_id);

    void record_vote(const std::string& proposal_id, const HolonId& voter, bool yes);
    /// Concludes now if every vote is in; WrongPhase unless voting.
    void force_decide(const std::string& proposal_id);

    bool has_proposal(const std::string& id) const { return proposals_.count(id) > 0; }
    const CompositionProposal& proposal(const std::string& id) const;
    bool has_composition(const HolonId& id) const { return records_.count(id) > 0; }
    const CompositionRecord& composition(const HolonId& id) const;
    CompositionRecord& composition_mut(const HolonId& id);
    const std::map<HolonId, CompositionRecord>& compositions() const { return records_; }
    const std::optional<MergeJob>& merge_job(const std::string& merge_id) const;

    using FinalizedHook = std::function<void(const CompositionRecord&)>;
    void set_finalized_hook(FinalizedHook hook) { finalized_hook_ = std::move(hook); }

private:
    CompositionProposal& proposal_mut(const std::string& id);
    void decide(CompositionProposal& prop);
    void finish_formation(CompositionProposal& prop, bool accepted);
    void finish_member_change(CompositionProposal& prop, bool accepted);
    void finish_merge_side(CompositionProposal& prop, bool accepted);
    void distribute_secret(const CompositionRecord& rec);
    void send_vote_requests(CompositionProposal& prop, const std::string& subject,
                            std::optional<SecretId> sealed_under);
    void arm_timeout(CompositionProposal& prop);

    std::string node_id_;
    Network& net_;
    CryptoProvider& crypto_;
    HolonRegistry& registry_;
    TraceSink& trace_;
    KeyPair keys_;
    std::uint64_t cert_serial_{0};
    std::map<HolonId, std::uint64_t> latest_serial_;
    std::map<HolonId, SecretId> channel_secret_;  // per-holon sealing channel
    std::map<std::string, CompositionProposal> proposals_;
    std::map<HolonId, CompositionRecord> records_;
    std::map<std::string, MergeJob> merges_;
    std::optional<MergeJob> no_merge_;
    FinalizedHook finalized_hook_;
};

} // namespace holon
