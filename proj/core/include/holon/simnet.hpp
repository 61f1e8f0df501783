#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "holon/crypto.hpp"
#include "holon/trace.hpp"
#include "holon/wire.hpp"

namespace holon {

enum class LinkQuality { Good, Weak, Down };

const char* link_quality_name(LinkQuality q);
LinkQuality link_quality_from_name(const std::string& s);

struct NetConfig {
    Tick default_delay{1};
    double default_drop{0.0};
    double weak_delay_factor{5.0};
    double weak_drop{0.3};
    Tick jitter{0};  // uniform extra delay in [0, jitter], drawn per attempt
};

struct LinkState {
    LinkQuality quality{LinkQuality::Good};
    Tick base_delay{1};
    double drop_probability{0.0};
    bool relay{false};  // MAV relay inserted: weak links route at good parameters
};

struct LinkParams {
    Tick delay{1};
    double drop{0.0};
};

/// A message in flight. Payload is carried as canonical encoded bytes; when
/// the envelope is sealed, open() only succeeds for holders of the sealing
/// secret — everyone else sees metadata.
class Envelope {
public:
    std::uint64_t seq() const { return seq_; }
    const std::string& src() const { return src_; }
    const std::string& dst() const { return dst_; }
    Tick send_time() const { return send_time_; }
    Tick deliver_time() const { return deliver_time_; }
    const std::optional<SecretId>& sealed_under() const { return sealed_under_; }
    std::uint64_t payload_hash() const { return payload_hash_; }

    std::optional<Message> open(const CryptoProvider& crypto, const std::string& holder) const;

private:
    friend class Network;
    std::uint64_t seq_{0};
    std::string src_, dst_;
    Tick send_time_{0};
    Tick deliver_time_{0};
    std::optional<SecretId> sealed_under_;
    Bytes encoded_;
    std::uint64_t payload_hash_{0};
};

/// Deterministic discrete-event network. One seeded RNG stream, consumed in
/// event order, feeds every drop and jitter decision; events at the same tick
/// process in ascending sequence (emission) order. Each directed link delivers
/// serially, so per-link order is send order even with drops (a dropped
/// attempt retries ahead of everything queued behind it).
class Network {
public:
    using Handler = std::function<void(const Envelope&)>;
    using CancelToken = std::shared_ptr<bool>;
    using LinkChangedHook = std::function<void(const std::string&, const std::string&, LinkQuality)>;

    explicit Network(std::uint64_t seed, NetConfig cfg = {});

    void set_trace(TraceSink* sink) { trace_ = sink; }
    void set_link_changed_hook(LinkChangedHook hook) { link_changed_ = std::move(hook); }

    void register_node(const std::string& id, Handler handler);
    bool has_node(const std::string& id) const { return handlers_.count(id) > 0; }

    Tick now() const { return now_; }

    void send(const std::string& src, const std::string& dst, const Message& payload,
              std::optional<SecretId> sealed_under = std::nullopt);

    void set_link(const std::string& a, const std::string& b, LinkQuality quality);
    void configure_link(const std::string& a, const std::string& b, Tick base_delay,
                        double drop_probability);
    void set_relay(const std::string& a, const std::string& b, bool on);

    LinkQuality link_quality(const std::string& a, const std::string& b) const;
    bool has_relay(const std::string& a, const std::string& b) const;
    LinkParams effective_params(const std::string& a, const std::string& b) const;
    /// Down links are unreachable regardless of relays.
    bool reachable(const std::string& a, const std::string& b) const;

    CancelToken schedule(Tick at, std::function<void()> fn);
    void cancel(CancelToken& token);

    /// Process events until the queue drains. Returns processed event count.
    std::size_t run_until_quiescence();
    /// Process events with time <= t. Returns processed event count.
    std::size_t run_until(Tick t);

    std::size_t live_events() const { return live_; }

    /// Seeded decisions made so far ("drop:A->B" -> 0/1, "jitter:A->B" -> n);
    /// lets tests replay and compare runs.
    const std::vector<std::pair<std::string, std::uint64_t>>& decision_log() const {
        return decisions_;
    }

private:
    struct Event {
        Tick at;
        std::uint64_t seq;
        std::function<void()> fn;
        CancelToken cancelled;
    };
    struct EventOrder {
        bool operator()(const Event& a, const Event& b) const {
            return a.at != b.at ? a.at > b.at : a.seq > b.seq;
        }
    };
    struct DirectedQueue {
        std::deque<Envelope> q;
        bool in_flight{false};
    };

    using NodePair = std::pair<std::string, std::string>;
    static NodePair ordered(const std::string& a, const std::string& b) {
        return a < b ? NodePair{a, b} : NodePair{b, a};
    }

    const LinkState& link(const std::string& a, const std::string& b) const;
    LinkState& link_mut(const std::string& a, const std::string& b);
    void require_node(const std::string& id) const;
    void start_next(const std::string& src, const std::string& dst);
    void attempt_head(const std::string& src, const std::string& dst);
    void pump_one(Event&& ev);
    Tick draw_jitter(const std::string& src, const std::string& dst);
    bool draw_drop(const std::string& src, const std::string& dst, double p);

    NetConfig cfg_;
    Tick now_{0};
    std::uint64_t next_seq_{0};
    std::uint64_t next_envelope_{0};
    std::mt19937_64 rng_;
    std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
    std::size_t live_{0};
    std::map<std::string, Handler> handlers_;
    mutable std::map<NodePair, LinkState> links_;
    std::map<NodePair, DirectedQueue> flows_;  // keyed by directed (src, dst)
    TraceSink* trace_{nullptr};
    LinkChangedHook link_changed_;
    std::vector<std::pair<std::string, std::uint64_t>> decisions_;
};

} // namespace holon
