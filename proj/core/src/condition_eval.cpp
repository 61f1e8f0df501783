#include <algorithm>
#include <optional>

#include "holon/condition.hpp"

namespace holon::dsl {

namespace {

std::optional<Tick> last_occurrence(const std::vector<EventOccurrence>& log,
                                    const std::string& kind) {
    std::optional<Tick> out;
    for (const auto& ev : log)
        if (ev.kind == kind) out = ev.t;
    return out;
}

std::string substitute(const std::string& seg, const EvalContext& ctx) {
    if (!seg.empty() && seg[0] == '$') {
        auto it = ctx.vars.find(seg);
        if (it != ctx.vars.end()) return it->second;
    }
    return seg;
}

Value resolve_path(const Path& p, const EvalContext& ctx) {
    if (p.segments.empty()) return Value::null();
    std::vector<std::string> segs;
    segs.reserve(p.segments.size());
    for (const auto& s : p.segments) segs.push_back(substitute(s, ctx));

    auto role_it = ctx.roles.find(segs[0]);
    if (role_it != ctx.roles.end()) {
        if (segs.size() < 2 || !ctx.role_attr) return Value::null();
        std::string attr = segs[1];
        for (size_t i = 2; i < segs.size(); ++i) attr += "." + segs[i];
        return ctx.role_attr(role_it->second, attr);
    }
    if (segs[0] == "sensation") {
        if (segs.size() < 2) return Value::null();
        auto it = ctx.event.find(segs[1]);
        return it == ctx.event.end() ? Value::null() : it->second;
    }
    if (ctx.lookup) return ctx.lookup(segs);
    return Value::null();
}

// Same-tag ordering; nullopt when the tags differ or the tag is unordered.
std::optional<int> compare(const Value& l, const Value& r) {
    if (l.tag() != r.tag()) return std::nullopt;
    if (l == r) return 0;
    if (Value::less(l, r)) return -1;
    if (Value::less(r, l)) return 1;
    return std::nullopt;
}

Value eval_cmp(const Cmp& c, const EvalContext& ctx) {
    if (c.op == CmpOp::In) {
        Value l = evaluate(c.l, ctx);
        if (l.is_null()) return Value(false);
        const auto* list = std::get_if<ListLit>(&c.r->node);
        if (!list) return Value(false);
        for (const auto& item : list->items)
            if (l == item) return Value(true);
        return Value(false);
    }
    Value l = evaluate(c.l, ctx);
    Value r = evaluate(c.r, ctx);
    if (l.is_null() || r.is_null()) return Value(false);  // null never compares true
    switch (c.op) {
    case CmpOp::Eq:
    case CmpOp::Is: return Value(l == r);
    case CmpOp::Ne: return Value(l.tag() == r.tag() && !(l == r));
    case CmpOp::Gt: {
        auto ord = compare(l, r);
        return Value(ord && *ord > 0);
    }
    case CmpOp::Lt: {
        auto ord = compare(l, r);
        return Value(ord && *ord < 0);
    }
    case CmpOp::Ge: {
        auto ord = compare(l, r);
        return Value(ord && *ord >= 0);
    }
    case CmpOp::Le: {
        auto ord = compare(l, r);
        return Value(ord && *ord <= 0);
    }
    default: return Value(false);
    }
}

Value eval_agg(const Agg& a, const EvalContext& ctx) {
    if (const auto* sel = std::get_if<EventSel>(&a.selector->node)) {
        std::int64_t n = 0;
        for (const auto& ev : ctx.event_log)
            if (ev.kind == sel->kind) ++n;
        return Value(n);
    }
    const auto* p = std::get_if<Path>(&a.selector->node);
    if (!p) return a.op == AggOp::Average ? Value::null() : Value(std::int64_t{0});

    std::vector<Value> selected;
    if (p->segments.size() == 1) {
        for (const auto& m : ctx.members) selected.push_back(Value(m.id));
    } else {
        std::string field = p->segments[1];
        for (size_t i = 2; i < p->segments.size(); ++i) field += "." + p->segments[i];
        for (const auto& m : ctx.members) {
            Value v = m.field ? m.field(field) : Value::null();
            if (!v.is_null()) selected.push_back(v);
        }
    }
    switch (a.op) {
    case AggOp::Count: return Value(static_cast<std::int64_t>(selected.size()));
    case AggOp::Sum: {
        double sum = 0.0;
        for (const auto& v : selected)
            if (v.is_numeric()) sum += v.as_number();
        return Value(sum);
    }
    case AggOp::Average: {
        double sum = 0.0;
        std::int64_t n = 0;
        for (const auto& v : selected) {
            if (v.is_numeric()) {
                sum += v.as_number();
                ++n;
            }
        }
        if (n == 0) return Value::null();
        return Value(sum / static_cast<double>(n));
    }
    }
    return Value::null();
}

} // namespace

bool temporal_eval(TemporalOp op, const std::string& kind_a, const std::string& kind_b, Tick lo,
                   Tick hi, const std::vector<EventOccurrence>& log) {
    switch (op) {
    case TemporalOp::Before: {
        auto a = last_occurrence(log, kind_a);
        auto b = last_occurrence(log, kind_b);
        return a && b && *a < *b;
    }
    case TemporalOp::After: {
        auto a = last_occurrence(log, kind_a);
        auto b = last_occurrence(log, kind_b);
        return a && b && *a > *b;
    }
    case TemporalOp::During:
        return std::any_of(log.begin(), log.end(), [&](const EventOccurrence& ev) {
            return ev.kind == kind_a && ev.t >= lo && ev.t <= hi;
        });
    }
    return false;
}

Value evaluate(const ExprPtr& expr, const EvalContext& ctx) {
    return std::visit(
        [&](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Or>) {
                return Value(evaluate(n.l, ctx).truthy() || evaluate(n.r, ctx).truthy());
            } else if constexpr (std::is_same_v<T, And>) {
                return Value(evaluate(n.l, ctx).truthy() && evaluate(n.r, ctx).truthy());
            } else if constexpr (std::is_same_v<T, Not>) {
                return Value(!evaluate(n.e, ctx).truthy());
            } else if constexpr (std::is_same_v<T, Cmp>) {
                return eval_cmp(n, ctx);
            } else if constexpr (std::is_same_v<T, Temporal>) {
                std::string kind_a, kind_b;
                Tick lo = 0, hi = 0;
                if (const auto* a = std::get_if<EventSel>(&n.a->node)) kind_a = a->kind;
                if (const auto* b = std::get_if<EventSel>(&n.b->node)) kind_b = b->kind;
                if (const auto* iv = std::get_if<Interval>(&n.b->node)) {
                    lo = iv->lo;
                    hi = iv->hi;
                }
                return Value(temporal_eval(n.op, kind_a, kind_b, lo, hi, ctx.event_log));
            } else if constexpr (std::is_same_v<T, Agg>) {
                return eval_agg(n, ctx);
            } else if constexpr (std::is_same_v<T, Path>) {
                return resolve_path(n, ctx);
            } else if constexpr (std::is_same_v<T, Literal>) {
                return n.v;
            } else if constexpr (std::is_same_v<T, Has>) {
                std::string subject = substitute(n.subject, ctx);
                auto role_it = ctx.roles.find(subject);
                if (role_it != ctx.roles.end())
                    return Value(ctx.role_has && ctx.role_has(role_it->second, n.capability));
                return Value(ctx.subject_has && ctx.subject_has(subject, n.capability));
            } else {
                // ListLit / EventSel / Interval have no standalone value.
                return Value::null();
            }
        },
        expr->node);
}

bool evaluate_bool(const ExprPtr& expr, const EvalContext& ctx) {
    return evaluate(expr, ctx).truthy();
}

} // namespace holon::dsl
