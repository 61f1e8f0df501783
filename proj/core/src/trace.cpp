#include "holon/trace.hpp"

#include <fstream>
#include <sstream>

#include "holon/errors.hpp"

namespace holon {

namespace {

const char* kKindNames[] = {
    "CertIssued",        "ProposalCreated",   "VoteCast",
    "CompositionFinalized", "CompositionRejected", "SecretRotated",
    "MediatorSelected",  "SensationEmitted",  "SensationDelivered",
    "SharedWrite",       "TriggerFired",      "TriggerDeferred",
    "RoleBound",         "ActionExecuted",    "InstanceSuspended",
    "InstanceResumed",   "InstanceCompleted", "LinkChanged",
    "MAVDeployed",       "MessageDropped",
};

bool needs_quoting(const std::string& v) {
    if (v.empty()) return true;
    for (char c : v) {
        if (c == ' ' || c == '"' || c == '=' || c == '\\' || c == '\n' || c == '\t') return true;
    }
    return false;
}

} // namespace

const char* trace_kind_name(TraceKind k) { return kKindNames[static_cast<int>(k)]; }

TraceKind trace_kind_from_name(const std::string& name) {
    for (int i = 0; i < static_cast<int>(std::size(kKindNames)); ++i) {
        if (name == kKindNames[i]) return static_cast<TraceKind>(i);
    }
    raise(Errc::ParseError, "unknown trace event kind '" + name + "'");
}

std::string quote_attr(const std::string& v) {
    if (!needs_quoting(v)) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string TraceEvent::to_line() const {
    std::string line = "t=" + std::to_string(tick) + " " + trace_kind_name(kind);
    for (const auto& [k, v] : attrs) {
        line += " ";
        line += k;
        line += "=";
        line += quote_attr(v);
    }
    return line;
}

TraceEvent TraceEvent::from_line(const std::string& line) {
    TraceEvent ev;
    size_t i = 0;
    auto skip_ws = [&] { while (i < line.size() && line[i] == ' ') ++i; };
    auto token = [&]() -> std::string {
        std::string tok;
        while (i < line.size() && line[i] != ' ' && line[i] != '=') tok += line[i++];
        return tok;
    };
    auto value = [&]() -> std::string {
        std::string v;
        if (i < line.size() && line[i] == '"') {
            ++i;
            while (i < line.size() && line[i] != '"') {
                if (line[i] == '\\' && i + 1 < line.size()) ++i;
                v += line[i++];
            }
            if (i >= line.size()) raise(Errc::ParseError, "unterminated quote in trace line: " + line);
            ++i;
        } else {
            while (i < line.size() && line[i] != ' ') v += line[i++];
        }
        return v;
    };

    skip_ws();
    std::string t = token();
    if (t != "t" || i >= line.size() || line[i] != '=')
        raise(Errc::ParseError, "trace line must start with t=<tick>: " + line);
    ++i;
    ev.tick = std::stoull(value());
    skip_ws();
    ev.kind = trace_kind_from_name(token());
    skip_ws();
    while (i < line.size()) {
        std::string key = token();
        if (key.empty() || i >= line.size() || line[i] != '=')
            raise(Errc::ParseError, "malformed attribute in trace line: " + line);
        ++i;
        ev.attrs[key] = value();
        skip_ws();
    }
    return ev;
}

void TraceSink::emit(Tick tick, TraceKind kind, std::map<std::string, std::string> attrs) {
    if (!events_.empty()) {
        HOLON_ASSERT(tick >= events_.back().tick, "trace ticks must be non-decreasing");
    }
    events_.push_back(TraceEvent{tick, kind, std::move(attrs)});
}

std::string TraceSink::to_text() const {
    std::string out;
    for (const auto& ev : events_) {
        out += ev.to_line();
        out += '\n';
    }
    return out;
}

void TraceSink::write_file(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) raise(Errc::ParseError, "cannot open trace file for writing: " + path);
    f << to_text();
}

std::vector<TraceEvent> parse_trace(const std::string& text) {
    std::vector<TraceEvent> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(TraceEvent::from_line(line));
    }
    return out;
}

std::vector<TraceEvent> read_trace_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) raise(Errc::ParseError, "cannot open trace file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_trace(ss.str());
}

} // namespace holon
