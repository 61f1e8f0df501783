#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "holon/value.hpp"

namespace holon {

enum class TraceKind {
    CertIssued,
    ProposalCreated,
    VoteCast,
    CompositionFinalized,
    CompositionRejected,
    SecretRotated,
    MediatorSelected,
    SensationEmitted,
    SensationDelivered,
    SharedWrite,
    TriggerFired,
    TriggerDeferred,
    RoleBound,
    ActionExecuted,
    InstanceSuspended,
    InstanceResumed,
    InstanceCompleted,
    LinkChanged,
    MAVDeployed,
    MessageDropped,
};

const char* trace_kind_name(TraceKind k);
TraceKind trace_kind_from_name(const std::string& name);

/// One line of the run record. Attribute keys are kept sorted (std::map) so
/// the printed form is byte-stable across runs.
struct TraceEvent {
    Tick tick{0};
    TraceKind kind{TraceKind::SensationEmitted};
    std::map<std::string, std::string> attrs;

    /// `t=<tick> <kind> k1=v1 k2=v2 ...`; values are quoted when they contain
    /// spaces, quotes, '=' or are empty.
    std::string to_line() const;
    static TraceEvent from_line(const std::string& line);
};

/// Collects events during a run; ticks must be non-decreasing.
class TraceSink {
public:
    void emit(Tick tick, TraceKind kind, std::map<std::string, std::string> attrs);

    const std::vector<TraceEvent>& events() const { return events_; }
    void clear() { events_.clear(); }

    std::string to_text() const;
    void write_file(const std::string& path) const;

private:
    std::vector<TraceEvent> events_;
};

std::vector<TraceEvent> parse_trace(const std::string& text);
std::vector<TraceEvent> read_trace_file(const std::string& path);

/// Quote an attribute value iff needed for unambiguous re-parsing.
std::string quote_attr(const std::string& v);

} // namespace holon
