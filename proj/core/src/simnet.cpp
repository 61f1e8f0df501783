#include "holon/simnet.hpp"

#include <cmath>

#include "holon/errors.hpp"

namespace holon {

const char* link_quality_name(LinkQuality q) {
    switch (q) {
    case LinkQuality::Good: return "good";
    case LinkQuality::Weak: return "weak";
    case LinkQuality::Down: return "down";
    }
    return "good";
}

LinkQuality link_quality_from_name(const std::string& s) {
    if (s == "good") return LinkQuality::Good;
    if (s == "weak") return LinkQuality::Weak;
    if (s == "down") return LinkQuality::Down;
    raise(Errc::ParseError, "unknown link quality '" + s + "'");
}

std::optional<Message> Envelope::open(const CryptoProvider& crypto,
                                      const std::string& holder) const {
    if (!sealed_under_) return decode_message(encoded_);
    auto plain = crypto.unseal(holder, SealedBlob{*sealed_under_, encoded_});
    if (!plain) return std::nullopt;
    return decode_message(*plain);
}

Network::Network(std::uint64_t seed, NetConfig cfg) : cfg_(cfg), rng_(seed) {}

void Network::register_node(const std::string& id, Handler handler) {
    if (handlers_.count(id)) raise(Errc::DuplicateId, "node '" + id + "' already registered");
    handlers_[id] = std::move(handler);
}

void Network::require_node(const std::string& id) const {
    if (!handlers_.count(id)) raise(Errc::UnknownNode, "no node '" + id + "'");
}

const LinkState& Network::link(const std::string& a, const std::string& b) const {
    auto key = ordered(a, b);
    auto it = links_.find(key);
    if (it == links_.end()) {
        LinkState def;
        def.base_delay = cfg_.default_delay;
        def.drop_probability = cfg_.default_drop;
        it = links_.emplace(key, def).first;
    }
    return it->second;
}

LinkState& Network::link_mut(const std::string& a, const std::string& b) {
    link(a, b);  // materialize defaults
    return links_[ordered(a, b)];
}

LinkQuality Network::link_quality(const std::string& a, const std::string& b) const {
    return link(a, b).quality;
}

bool Network::has_relay(const std::string& a, const std::string& b) const {
    return link(a, b).relay;
}

LinkParams Network::effective_params(const std::string& a, const std::string& b) const {
    const LinkState& l = link(a, b);
    LinkParams p{l.base_delay, l.drop_probability};
    if (l.quality == LinkQuality::Weak && !l.relay) {
        p.delay = static_cast<Tick>(std::llround(static_cast<double>(l.base_delay) *
                                                 cfg_.weak_delay_factor));
        if (p.delay < 1) p.delay = 1;
        p.drop = cfg_.weak_drop;
    }
    return p;
}

bool Network::reachable(const std::string& a, const std::string& b) const {
    return link(a, b).quality != LinkQuality::Down;
}

void Network::configure_link(const std::string& a, const std::string& b, Tick base_delay,
                             double drop_probability) {
    require_node(a);
    require_node(b);
    if (drop_probability < 0.0 || drop_probability >= 1.0)
        raise(Errc::ParseError, "drop_probability must be in [0,1)");
    LinkState& l = link_mut(a, b);
    l.base_delay = base_delay;
    l.drop_probability = drop_probability;
}

void Network::set_link(const std::string& a, const std::string& b, LinkQuality quality) {
    require_node(a);
    require_node(b);
    LinkState& l = link_mut(a, b);
    if (l.quality == quality) return;  // idempotent: no event, no sensation
    l.quality = quality;
    if (trace_)
        trace_->emit(now_, TraceKind::LinkChanged,
                     {{"a", a}, {"b", b}, {"quality", link_quality_name(quality)}});
    if (link_changed_) link_changed_(a, b, quality);
    if (quality != LinkQuality::Down) {
        // Flush traffic parked while the link was down, in send order.
        for (const auto& dir : {NodePair{a, b}, NodePair{b, a}}) {
            auto it = flows_.find(dir);
            if (it != flows_.end() && !it->second.in_flight && !it->second.q.empty())
                start_next(dir.first, dir.second);
        }
    }
}

void Network::set_relay(const std::string& a, const std::string& b, bool on) {
    require_node(a);
    require_node(b);
    link_mut(a, b).relay = on;
}

Network::CancelToken Network::schedule(Tick at, std::function<void()> fn) {
    HOLON_ASSERT(at >= now_, "cannot schedule into the past");
    auto token = std::make_shared<bool>(false);
    queue_.push(Event{at, next_seq_++, std::move(fn), token});
    ++live_;
    return token;
}

void Network::cancel(CancelToken& token) {
    if (token && !*token) {
        *token = true;
        HOLON_ASSERT(live_ > 0, "cancel with no live events");
        --live_;
    }
}

Tick Network::draw_jitter(const std::string& src, const std::string& dst) {
    if (cfg_.jitter == 0) return 0;
    std::uniform_int_distribution<Tick> dist(0, cfg_.jitter);
    Tick j = dist(rng_);
    decisions_.emplace_back("jitter:" + src + "->" + dst, j);
    return j;
}

bool Network::draw_drop(const std::string& src, const std::string& dst, double p) {
    if (p <= 0.0) return false;
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    bool dropped = dist(rng_) < p;
    decisions_.emplace_back("drop:" + src + "->" + dst, dropped ? 1 : 0);
    return dropped;
}

void Network::send(const std::string& src, const std::string& dst, const Message& payload,
                   std::optional<SecretId> sealed_under) {
    require_node(src);
    require_node(dst);
    Envelope env;
    env.seq_ = next_envelope_++;
    env.src_ = src;
    env.dst_ = dst;
    env.send_time_ = now_;
    env.sealed_under_ = std::move(sealed_under);
    env.encoded_ = encode_message(payload);
    env.payload_hash_ = fnv1a64(env.encoded_);

    if (src == dst) {
        // Local loopback: same-tick delivery through the event queue so it
        // still interleaves deterministically with everything else.
        env.deliver_time_ = now_;
        schedule(now_, [this, env = std::move(env)]() mutable {
            handlers_.at(env.dst_)(env);
        });
        return;
    }

    DirectedQueue& flow = flows_[{src, dst}];
    flow.q.push_back(std::move(env));
    if (!flow.in_flight && link(src, dst).quality != LinkQuality::Down) start_next(src, dst);
}

void Network::start_next(const std::string& src, const std::string& dst) {
    DirectedQueue& flow = flows_[{src, dst}];
    if (flow.q.empty()) {
        flow.in_flight = false;
        return;
    }
    if (link(src, dst).quality == LinkQuality::Down) {
        flow.in_flight = false;  // parked until the link heals
        return;
    }
    flow.in_flight = true;
    LinkParams params = effective_params(src, dst);
    Tick at = now_ + params.delay + draw_jitter(src, dst);
    schedule(at, [this, src, dst] { attempt_head(src, dst); });
}

void Network::attempt_head(const std::string& src, const std::string& dst) {
    DirectedQueue& flow = flows_[{src, dst}];
    if (flow.q.empty()) {
        flow.in_flight = false;
        return;
    }
    if (link(src, dst).quality == LinkQuality::Down) {
        flow.in_flight = false;  // went down while in flight; park and retry on heal
        return;
    }
    LinkParams params = effective_params(src, dst);
    if (draw_drop(src, dst, params.drop)) {
        if (trace_)
            trace_->emit(now_, TraceKind::MessageDropped,
                         {{"src", src},
                          {"dst", dst},
                          {"hash", hex64(flow.q.front().payload_hash_)}});
        Tick retry = now_ + params.delay + draw_jitter(src, dst);
        schedule(retry, [this, src, dst] { attempt_head(src, dst); });
        return;
    }
    Envelope env = std::move(flow.q.front());
    flow.q.pop_front();
    env.deliver_time_ = now_;
    HOLON_ASSERT(env.deliver_time_ >= env.send_time_ + link(src, dst).base_delay,
                 "delivery violates causality");
    handlers_.at(dst)(env);
    start_next(src, dst);
}

void Network::pump_one(Event&& ev) {
    HOLON_ASSERT(ev.at >= now_, "event queue went backwards");
    now_ = ev.at;
    --live_;
    ev.fn();
}

std::size_t Network::run_until_quiescence() {
    std::size_t processed = 0;
    while (live_ > 0) {
        Event ev = queue_.top();
        queue_.pop();
        if (*ev.cancelled) continue;
        pump_one(std::move(ev));
        ++processed;
    }
    // Drain any cancelled leftovers so the queue stays small.
    while (!queue_.empty() && *queue_.top().cancelled) queue_.pop();
    return processed;
}

std::size_t Network::run_until(Tick t) {
    std::size_t processed = 0;
    while (live_ > 0 && !queue_.empty()) {
        if (!*queue_.top().cancelled && queue_.top().at > t) break;
        Event ev = queue_.top();
        queue_.pop();
        if (*ev.cancelled) continue;
        pump_one(std::move(ev));
        ++processed;
    }
    if (now_ < t) now_ = t;
    return processed;
}

} // namespace holon
