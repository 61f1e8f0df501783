#include "holon/wire.hpp"

#include <cstring>

#include "holon/errors.hpp"

namespace holon {

void VotingConfig::validate() const {
    if (!(formation_threshold > 0.0 && formation_threshold <= 1.0))
        raise(Errc::ParseError, "formation_threshold must be in (0,1]");
    if (!(change_threshold > 0.0 && change_threshold <= 1.0))
        raise(Errc::ParseError, "change_threshold must be in (0,1]");
    if (vote_timeout == 0) raise(Errc::ParseError, "vote_timeout must be > 0");
}

namespace {

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (i * 8)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (i * 8)));
    }
    void f64(double d) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof(bits));
        u64(bits);
    }
    void boolean(bool b) { u8(b ? 1 : 0); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf_.insert(buf_.end(), s.begin(), s.end());
    }
    void bytes(const Bytes& b) {
        u32(static_cast<std::uint32_t>(b.size()));
        buf_.insert(buf_.end(), b.begin(), b.end());
    }
    void value(const Value& v) {
        u8(static_cast<std::uint8_t>(v.tag()));
        switch (v.tag()) {
        case ValueTag::Null: break;
        case ValueTag::Bool: boolean(v.as_bool()); break;
        case ValueTag::Int: u64(static_cast<std::uint64_t>(v.as_int())); break;
        case ValueTag::Decimal: f64(v.as_decimal()); break;
        case ValueTag::String: str(v.as_string()); break;
        case ValueTag::Loc:
            f64(v.as_location().lat);
            f64(v.as_location().lon);
            break;
        }
    }
    void value_map(const ValueMap& m) {
        u32(static_cast<std::uint32_t>(m.size()));
        for (const auto& [k, v] : m) {
            str(k);
            value(v);
        }
    }
    void strings(const std::vector<std::string>& v) {
        u32(static_cast<std::uint32_t>(v.size()));
        for (const auto& s : v) str(s);
    }
    void sensation(const Sensation& s) {
        str(s.id);
        str(s.source);
        str(s.kind);
        value_map(s.payload);
        u64(s.timestamp);
    }
    void certificate(const Certificate& c) {
        str(c.subject);
        bytes(c.public_key);
        u64(c.issued_at);
        u64(c.serial);
        bytes(c.issuer_signature);
    }
    void voting(const VotingConfig& v) {
        f64(v.formation_threshold);
        f64(v.change_threshold);
        u64(v.vote_timeout);
    }

    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (i * 8);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (i * 8);
        return v;
    }
    double f64() {
        std::uint64_t bits = u64();
        double d;
        std::memcpy(&d, &bits, sizeof(d));
        return d;
    }
    bool boolean() { return u8() != 0; }
    std::string str() {
        std::uint32_t n = u32();
        need(n);
        std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
        pos_ += n;
        return s;
    }
    Bytes bytes() {
        std::uint32_t n = u32();
        need(n);
        Bytes b(data_.begin() + pos_, data_.begin() + pos_ + n);
        pos_ += n;
        return b;
    }
    Value value() {
        auto tag = static_cast<ValueTag>(u8());
        switch (tag) {
        case ValueTag::Null: return Value::null();
        case ValueTag::Bool: return Value(boolean());
        case ValueTag::Int: return Value(static_cast<std::int64_t>(u64()));
        case ValueTag::Decimal: return Value(f64());
        case ValueTag::String: return Value(str());
        case ValueTag::Loc: {
            Location l;
            l.lat = f64();
            l.lon = f64();
            return Value(l);
        }
        }
        raise(Errc::ParseError, "bad value tag in message");
    }
    ValueMap value_map() {
        ValueMap m;
        std::uint32_t n = u32();
        for (std::uint32_t i = 0; i < n; ++i) {
            std::string k = str();
            m.emplace(std::move(k), value());
        }
        return m;
    }
    std::vector<std::string> strings() {
        std::vector<std::string> v(u32());
        for (auto& s : v) s = str();
        return v;
    }
    Sensation sensation() {
        Sensation s;
        s.id = str();
        s.source = str();
        s.kind = str();
        s.payload = value_map();
        s.timestamp = u64();
        return s;
    }
    Certificate certificate() {
        Certificate c;
        c.subject = str();
        c.public_key = bytes();
        c.issued_at = u64();
        c.serial = u64();
        c.issuer_signature = bytes();
        return c;
    }
    VotingConfig voting() {
        VotingConfig v;
        v.formation_threshold = f64();
        v.change_threshold = f64();
        v.vote_timeout = u64();
        return v;
    }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(size_t n) {
        if (pos_ + n > data_.size()) raise(Errc::ParseError, "truncated message");
    }
    std::span<const std::uint8_t> data_;
    size_t pos_{0};
};

} // namespace

Bytes Certificate::signed_payload() const {
    Writer w;
    w.str(subject);
    w.bytes(public_key);
    w.u64(issued_at);
    w.u64(serial);
    return w.take();
}

Bytes encode_message(const Message& m) {
    Writer w;
    w.u8(static_cast<std::uint8_t>(m.index()) + 1);
    std::visit(
        [&](const auto& msg) {
            using T = std::decay_t<decltype(msg)>;
            if constexpr (std::is_same_v<T, CertRequest>) {
                w.str(msg.holon);
            } else if constexpr (std::is_same_v<T, CertGrant>) {
                w.certificate(msg.cert);
            } else if constexpr (std::is_same_v<T, ProposalSubmit>) {
                w.str(msg.proposal_id);
                w.str(msg.initiator);
                w.strings(msg.candidates);
                w.voting(msg.voting);
            } else if constexpr (std::is_same_v<T, SecretDistribute>) {
                w.str(msg.composition_id);
                w.str(msg.secret);
            } else if constexpr (std::is_same_v<T, VoteRequest>) {
                w.str(msg.proposal_id);
                w.str(msg.candidate);
                w.str(msg.subject);
            } else if constexpr (std::is_same_v<T, VoteCastMsg>) {
                w.str(msg.proposal_id);
                w.str(msg.voter);
                w.boolean(msg.yes);
            } else if constexpr (std::is_same_v<T, CompositionFinalizedMsg>) {
                w.str(msg.composition_id);
                w.str(msg.proposal_id);
                w.strings(msg.members);
            } else if constexpr (std::is_same_v<T, CompositionRejectedMsg>) {
                w.str(msg.proposal_id);
            } else if constexpr (std::is_same_v<T, MemberChangeProposalMsg>) {
                w.str(msg.proposal_id);
                w.str(msg.composition_id);
                w.str(msg.candidate);
                w.boolean(msg.add);
            } else if constexpr (std::is_same_v<T, MemberChangeResultMsg>) {
                w.str(msg.proposal_id);
                w.str(msg.composition_id);
                w.boolean(msg.accepted);
                w.str(msg.candidate);
                w.boolean(msg.add);
            } else if constexpr (std::is_same_v<T, StateWriteMsg>) {
                w.str(msg.collab_id);
                w.str(msg.writer);
                w.str(msg.path);
                w.value(msg.value);
                w.u64(msg.stamp);
            } else if constexpr (std::is_same_v<T, SensationReportMsg>) {
                w.str(msg.collab_id);
                w.sensation(msg.sensation);
            } else if constexpr (std::is_same_v<T, SensationForwardMsg>) {
                w.str(msg.collab_id);
                w.sensation(msg.sensation);
            } else if constexpr (std::is_same_v<T, AlertMsg>) {
                w.str(msg.collab_id);
                w.str(msg.role);
                w.str(msg.resource);
                w.str(msg.reply_path);
                w.f64(msg.loc.lat);
                w.f64(msg.loc.lon);
            }
        },
        m);
    return w.take();
}

Message decode_message(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    std::uint8_t tag = r.u8();
    Message m;
    switch (tag) {
    case 1: m = CertRequest{r.str()}; break;
    case 2: m = CertGrant{r.certificate()}; break;
    case 3: {
        ProposalSubmit p;
        p.proposal_id = r.str();
        p.initiator = r.str();
        p.candidates = r.strings();
        p.voting = r.voting();
        m = std::move(p);
        break;
    }
    case 4: {
        SecretDistribute s;
        s.composition_id = r.str();
        s.secret = r.str();
        m = std::move(s);
        break;
    }
    case 5: {
        VoteRequest v;
        v.proposal_id = r.str();
        v.candidate = r.str();
        v.subject = r.str();
        m = std::move(v);
        break;
    }
    case 6: {
        VoteCastMsg v;
        v.proposal_id = r.str();
        v.voter = r.str();
        v.yes = r.boolean();
        m = std::move(v);
        break;
    }
    case 7: {
        CompositionFinalizedMsg c;
        c.composition_id = r.str();
        c.proposal_id = r.str();
        c.members = r.strings();
        m = std::move(c);
        break;
    }
    case 8: m = CompositionRejectedMsg{r.str()}; break;
    case 9: {
        MemberChangeProposalMsg p;
        p.proposal_id = r.str();
        p.composition_id = r.str();
        p.candidate = r.str();
        p.add = r.boolean();
        m = std::move(p);
        break;
    }
    case 10: {
        MemberChangeResultMsg res;
        res.proposal_id = r.str();
        res.composition_id = r.str();
        res.accepted = r.boolean();
        res.candidate = r.str();
        res.add = r.boolean();
        m = std::move(res);
        break;
    }
    case 11: {
        StateWriteMsg s;
        s.collab_id = r.str();
        s.writer = r.str();
        s.path = r.str();
        s.value = r.value();
        s.stamp = r.u64();
        m = std::move(s);
        break;
    }
    case 12: {
        SensationReportMsg s;
        s.collab_id = r.str();
        s.sensation = r.sensation();
        m = std::move(s);
        break;
    }
    case 13: {
        SensationForwardMsg s;
        s.collab_id = r.str();
        s.sensation = r.sensation();
        m = std::move(s);
        break;
    }
    case 14: {
        AlertMsg a;
        a.collab_id = r.str();
        a.role = r.str();
        a.resource = r.str();
        a.reply_path = r.str();
        a.loc.lat = r.f64();
        a.loc.lon = r.f64();
        m = std::move(a);
        break;
    }
    default: raise(Errc::ParseError, "bad message tag " + std::to_string(tag));
    }
    if (!r.done()) raise(Errc::ParseError, "trailing bytes after message");
    return m;
}

std::uint64_t message_hash(const Message& m) {
    Bytes b = encode_message(m);
    return fnv1a64(b);
}

const char* message_type_name(const Message& m) {
    static const char* names[] = {
        "CertRequest",     "CertGrant",           "ProposalSubmit",
        "SecretDistribute", "VoteRequest",        "VoteCast",
        "CompositionFinalized", "CompositionRejected", "MemberChangeProposal",
        "MemberChangeResult",   "StateWrite",     "SensationReport",
        "SensationForward",     "Alert",
    };
    return names[m.index()];
}

} // namespace holon
