#include "holon/holon.hpp"

#include <algorithm>

namespace holon {

const Capability* Resource::find_capability(const std::string& cap_name) const {
    for (const auto& c : capabilities)
        if (c.name == cap_name) return &c;
    return nullptr;
}

Capability* Resource::find_capability(const std::string& cap_name) {
    for (auto& c : capabilities)
        if (c.name == cap_name) return &c;
    return nullptr;
}

Value HolonState::read(const std::string& path) const {
    auto it = latest_.find(path);
    return it == latest_.end() ? Value::null() : it->second;
}

Value HolonState::read_at(const std::string& path, std::uint64_t version) const {
    auto it = history_.find(path);
    if (it == history_.end()) return Value::null();
    Value out;
    for (const auto& [v, val] : it->second) {
        if (v > version) break;
        out = val;
    }
    return out;
}

std::uint64_t HolonState::write(const std::string& path, Value v) {
    ++version_;
    latest_[path] = v;
    history_[path].emplace_back(version_, std::move(v));
    return version_;
}

Resource* HolonRecord::find_resource(const std::string& name) {
    for (auto& r : descriptor.resources)
        if (r.name == name) return &r;
    return nullptr;
}

const Resource* HolonRecord::find_resource(const std::string& name) const {
    for (const auto& r : descriptor.resources)
        if (r.name == name) return &r;
    return nullptr;
}

HolonId HolonRegistry::register_holon(HolonDescriptor descriptor) {
    if (descriptor.id.empty()) raise(Errc::ParseError, "holon id must be non-empty");
    if (records_.count(descriptor.id))
        raise(Errc::DuplicateId, "holon '" + descriptor.id + "' already registered");
    for (auto& res : descriptor.resources) {
        res.position = descriptor.location;
        for (auto& cap : res.capabilities) cap.provided_by = res.name;
    }
    HolonId id = descriptor.id;
    HolonRecord rec;
    rec.descriptor = std::move(descriptor);
    for (const auto& [path, v] : rec.descriptor.initial_state) rec.state.write(path, v);
    records_.emplace(id, std::move(rec));
    order_.push_back(id);
    return id;
}

HolonId HolonRegistry::register_composition_holon(const HolonId& composition_id) {
    if (records_.count(composition_id))
        raise(Errc::DuplicateId, "composition id '" + composition_id + "' collides with a registered holon");
    HolonRecord rec;
    rec.descriptor.id = composition_id;
    rec.is_composition = true;
    records_.emplace(composition_id, std::move(rec));
    return composition_id;
}

HolonRecord& HolonRegistry::get(const HolonId& id) {
    auto it = records_.find(id);
    if (it == records_.end()) raise(Errc::UnknownHolon, "no holon '" + id + "'");
    return it->second;
}

const HolonRecord& HolonRegistry::get(const HolonId& id) const {
    auto it = records_.find(id);
    if (it == records_.end()) raise(Errc::UnknownHolon, "no holon '" + id + "'");
    return it->second;
}

std::pair<Resource*, Capability*> HolonRegistry::resolve_capability(HolonRecord& rec,
                                                                    const std::string& capability) {
    auto dot = capability.find('.');
    if (dot != std::string::npos) {
        std::string res_name = capability.substr(0, dot);
        std::string cap_name = capability.substr(dot + 1);
        Resource* res = rec.find_resource(res_name);
        if (!res) raise(Errc::UnknownCapability, "no resource '" + res_name + "' on " + rec.descriptor.id);
        Capability* cap = res->find_capability(cap_name);
        if (!cap)
            raise(Errc::UnknownCapability,
                  "no capability '" + cap_name + "' on " + rec.descriptor.id + "." + res_name);
        return {res, cap};
    }
    Resource* found_res = nullptr;
    Capability* found_cap = nullptr;
    for (auto& res : rec.descriptor.resources) {
        if (Capability* cap = res.find_capability(capability)) {
            if (found_cap)
                raise(Errc::UnknownCapability,
                      "capability '" + capability + "' is ambiguous on " + rec.descriptor.id +
                          "; qualify as resource.capability");
            found_res = &res;
            found_cap = cap;
        }
    }
    if (!found_cap)
        raise(Errc::UnknownCapability, "no capability '" + capability + "' on " + rec.descriptor.id);
    return {found_res, found_cap};
}

void HolonRegistry::set_capability_available(const HolonId& id, const std::string& capability,
                                             bool available) {
    HolonRecord& rec = get(id);
    auto [res, cap] = resolve_capability(rec, capability);
    if (cap->available == available) return;  // idempotent, no duplicate notification
    cap->available = available;
    if (availability_hook_) availability_hook_(id, res->name, cap->name, available);
}

void HolonRegistry::remove_capability(const HolonId& id, const std::string& capability) {
    HolonRecord& rec = get(id);
    auto [res, cap] = resolve_capability(rec, capability);
    std::string cap_name = cap->name;
    auto& caps = res->capabilities;
    caps.erase(std::remove_if(caps.begin(), caps.end(),
                              [&](const Capability& c) { return c.name == cap_name; }),
               caps.end());
    if (removal_hook_) removal_hook_(id, res->name, cap_name);
}

Value HolonRegistry::read_state(const HolonId& id, const std::string& path) const {
    return get(id).state.read(path);
}

std::uint64_t HolonRegistry::write_state(const HolonId& id, const std::string& path, Value v) {
    return get(id).state.write(path, std::move(v));
}

std::vector<HolonId> HolonRegistry::ids() const {
    std::vector<HolonId> out;
    out.reserve(records_.size());
    for (const auto& [id, _] : records_) out.push_back(id);
    return out;
}

} // namespace holon
