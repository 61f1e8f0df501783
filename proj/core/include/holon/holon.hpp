#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "holon/crypto.hpp"
#include "holon/errors.hpp"
#include "holon/value.hpp"

namespace holon {

enum class ResourceStatus { Idle, Engaged, Unavailable };

struct Capability {
    std::string name;
    std::string provided_by;  // owning resource name
    bool available{true};
    ValueMap attributes;
};

struct Resource {
    std::string name;
    std::vector<Capability> capabilities;
    ResourceStatus status{ResourceStatus::Idle};
    std::string engaged_by;  // behaviour instance id, empty when idle
    Location position;

    const Capability* find_capability(const std::string& cap_name) const;
    Capability* find_capability(const std::string& cap_name);
};

/// How a holon answers vote requests during a run. Manual holons hold the
/// request until cast_vote is called on their behalf.
enum class VotePolicy { AlwaysYes, AlwaysNo, Manual };

struct HolonDescriptor {
    HolonId id;
    Location location;                      // base position of its resources
    std::map<std::string, double> scores;   // mediator criteria, each in [0,1]
    std::vector<Resource> resources;
    ValueMap initial_state;
    VotePolicy vote_policy{VotePolicy::AlwaysYes};
};

/// Versioned dotted-path map. Every write bumps the version; per-path history
/// is kept so reads can be replayed at any past version.
class HolonState {
public:
    std::uint64_t version() const { return version_; }

    /// Value at path, or null when the path was never written.
    Value read(const std::string& path) const;

    /// Value the path held at the given version (last write <= version).
    Value read_at(const std::string& path, std::uint64_t version) const;

    /// Returns the new version.
    std::uint64_t write(const std::string& path, Value v);

    const std::map<std::string, Value>& entries() const { return latest_; }

private:
    std::uint64_t version_{0};
    std::map<std::string, Value> latest_;
    std::map<std::string, std::vector<std::pair<std::uint64_t, Value>>> history_;
};

struct Sensation {
    std::string id;        // unique per run, e.g. "s7"
    std::string source;    // emitting HolonId or "external"
    std::string kind;
    ValueMap payload;
    Tick timestamp{0};
};

struct HolonRecord {
    HolonDescriptor descriptor;
    HolonState state;
    bool is_composition{false};

    // Protocol-side material, populated by initialization.
    std::optional<KeyPair> keys;
    bool initialized() const { return keys.has_value(); }

    Resource* find_resource(const std::string& name);
    const Resource* find_resource(const std::string& name) const;
};

/// Registry of every holon in the simulation, compositions included. All
/// mutation happens inside event handlers on the single simulation thread.
class HolonRegistry {
public:
    using AvailabilityHook =
        std::function<void(const HolonId&, const std::string& resource, const std::string& capability, bool)>;
    using RemovalHook =
        std::function<void(const HolonId&, const std::string& resource, const std::string& capability)>;

    HolonId register_holon(HolonDescriptor descriptor);
    HolonId register_composition_holon(const HolonId& composition_id);

    bool exists(const HolonId& id) const { return records_.count(id) > 0; }
    HolonRecord& get(const HolonId& id);
    const HolonRecord& get(const HolonId& id) const;

    /// `capability` addresses either "resource.capability" or a bare
    /// capability name when it is unique across the holon's resources.
    void set_capability_available(const HolonId& id, const std::string& capability, bool available);
    void remove_capability(const HolonId& id, const std::string& capability);

    Value read_state(const HolonId& id, const std::string& path) const;
    std::uint64_t write_state(const HolonId& id, const std::string& path, Value v);

    std::vector<HolonId> ids() const;

    /// Non-composition holons in registration order (scenario order matters
    /// for deterministic iteration).
    const std::vector<HolonId>& holon_order() const { return order_; }

    void set_availability_hook(AvailabilityHook hook) { availability_hook_ = std::move(hook); }
    void set_removal_hook(RemovalHook hook) { removal_hook_ = std::move(hook); }

private:
    std::pair<Resource*, Capability*> resolve_capability(HolonRecord& rec, const std::string& capability);

    std::map<HolonId, HolonRecord> records_;
    std::vector<HolonId> order_;
    AvailabilityHook availability_hook_;
    RemovalHook removal_hook_;
};

} // namespace holon
