#include "holon/condition.hpp"
#include "holon/errors.hpp"

namespace holon::dsl {

namespace {

const char* cmp_text(CmpOp op) {
    switch (op) {
    case CmpOp::Gt: return ">";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Is: return "is";
    case CmpOp::In: return "in";
    }
    return "==";
}

const char* temporal_text(TemporalOp op) {
    switch (op) {
    case TemporalOp::Before: return "BEFORE";
    case TemporalOp::After: return "AFTER";
    case TemporalOp::During: return "DURING";
    }
    return "BEFORE";
}

const char* agg_text(AggOp op) {
    switch (op) {
    case AggOp::Count: return "COUNT";
    case AggOp::Average: return "AVERAGE";
    case AggOp::Sum: return "SUM";
    }
    return "COUNT";
}

std::string literal_text(const Value& v) {
    if (v.is_string()) {
        std::string out = "\"";
        for (char c : v.as_string()) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        out += '"';
        return out;
    }
    return v.to_string();
}

// Precedence levels: or=1, and=2, not=3, cmp/temporal=4, atoms=5.
int precedence(const Expr& e) {
    if (std::holds_alternative<Or>(e.node)) return 1;
    if (std::holds_alternative<And>(e.node)) return 2;
    if (std::holds_alternative<Not>(e.node)) return 3;
    if (std::holds_alternative<Cmp>(e.node) || std::holds_alternative<Temporal>(e.node) ||
        std::holds_alternative<Has>(e.node))
        return 4;
    return 5;
}

void print_rec(const ExprPtr& e, int parent_prec, std::string& out) {
    int prec = precedence(*e);
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Or>) {
                print_rec(n.l, 1, out);
                out += " or ";
                print_rec(n.r, 2, out);
            } else if constexpr (std::is_same_v<T, And>) {
                print_rec(n.l, 2, out);
                out += " and ";
                print_rec(n.r, 3, out);
            } else if constexpr (std::is_same_v<T, Not>) {
                out += "not ";
                print_rec(n.e, 3, out);
            } else if constexpr (std::is_same_v<T, Cmp>) {
                print_rec(n.l, 5, out);
                out += ' ';
                out += cmp_text(n.op);
                out += ' ';
                print_rec(n.r, 5, out);
            } else if constexpr (std::is_same_v<T, Temporal>) {
                print_rec(n.a, 5, out);
                out += ' ';
                out += temporal_text(n.op);
                out += ' ';
                print_rec(n.b, 5, out);
            } else if constexpr (std::is_same_v<T, Agg>) {
                out += agg_text(n.op);
                out += '(';
                print_rec(n.selector, 0, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, Path>) {
                for (size_t i = 0; i < n.segments.size(); ++i) {
                    if (i) out += '.';
                    out += n.segments[i];
                }
            } else if constexpr (std::is_same_v<T, Literal>) {
                out += literal_text(n.v);
            } else if constexpr (std::is_same_v<T, ListLit>) {
                out += '[';
                for (size_t i = 0; i < n.items.size(); ++i) {
                    if (i) out += ", ";
                    out += literal_text(n.items[i]);
                }
                out += ']';
            } else if constexpr (std::is_same_v<T, EventSel>) {
                out += "sensation(";
                out += literal_text(Value(n.kind));
                out += ')';
            } else if constexpr (std::is_same_v<T, Interval>) {
                out += '[';
                out += std::to_string(n.lo);
                out += ", ";
                out += std::to_string(n.hi);
                out += ']';
            } else if constexpr (std::is_same_v<T, Has>) {
                out += n.subject;
                out += " has ";
                out += n.capability;
            }
        },
        e->node);
    if (parens) out += ')';
}

} // namespace

std::string print(const ExprPtr& expr) {
    std::string out;
    print_rec(expr, 0, out);
    return out;
}

bool equals(const ExprPtr& a, const ExprPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& na) {
            using T = std::decay_t<decltype(na)>;
            const T& nb = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, Or> || std::is_same_v<T, And>) {
                return equals(na.l, nb.l) && equals(na.r, nb.r);
            } else if constexpr (std::is_same_v<T, Not>) {
                return equals(na.e, nb.e);
            } else if constexpr (std::is_same_v<T, Cmp>) {
                return na.op == nb.op && equals(na.l, nb.l) && equals(na.r, nb.r);
            } else if constexpr (std::is_same_v<T, Temporal>) {
                return na.op == nb.op && equals(na.a, nb.a) && equals(na.b, nb.b);
            } else if constexpr (std::is_same_v<T, Agg>) {
                return na.op == nb.op && equals(na.selector, nb.selector);
            } else if constexpr (std::is_same_v<T, Path>) {
                return na.segments == nb.segments;
            } else if constexpr (std::is_same_v<T, Literal>) {
                return na.v == nb.v && na.v.tag() == nb.v.tag();
            } else if constexpr (std::is_same_v<T, ListLit>) {
                if (na.items.size() != nb.items.size()) return false;
                for (size_t i = 0; i < na.items.size(); ++i) {
                    if (na.items[i].tag() != nb.items[i].tag() || !(na.items[i] == nb.items[i]))
                        return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, EventSel>) {
                return na.kind == nb.kind;
            } else if constexpr (std::is_same_v<T, Interval>) {
                return na.lo == nb.lo && na.hi == nb.hi;
            } else if constexpr (std::is_same_v<T, Has>) {
                return na.subject == nb.subject && na.capability == nb.capability;
            }
        },
        a->node);
}

namespace {

enum class Ty { Bool, Int, Dec, Str, Null, List, Event, Interval, Any };

[[noreturn]] void type_err(const Expr& e, const std::string& msg) {
    raise(Errc::TypeError,
          "at " + std::to_string(e.line) + ":" + std::to_string(e.col) + ", " + msg);
}

bool boolish(Ty t) { return t == Ty::Bool || t == Ty::Any; }
bool scalar(Ty t) {
    return t == Ty::Bool || t == Ty::Int || t == Ty::Dec || t == Ty::Str || t == Ty::Null ||
           t == Ty::Any;
}
bool orderable(Ty t) { return t == Ty::Int || t == Ty::Dec || t == Ty::Str || t == Ty::Any; }

Ty infer(const ExprPtr& e) {
    return std::visit(
        [&](const auto& n) -> Ty {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Or> || std::is_same_v<T, And>) {
                Ty l = infer(n.l), r = infer(n.r);
                if (!boolish(l) || !boolish(r))
                    type_err(*e, "logical operands must be boolean");
                return Ty::Bool;
            } else if constexpr (std::is_same_v<T, Not>) {
                if (!boolish(infer(n.e))) type_err(*e, "'not' operand must be boolean");
                return Ty::Bool;
            } else if constexpr (std::is_same_v<T, Cmp>) {
                Ty l = infer(n.l), r = infer(n.r);
                switch (n.op) {
                case CmpOp::Gt:
                case CmpOp::Lt:
                case CmpOp::Ge:
                case CmpOp::Le:
                    if (!orderable(l) || !orderable(r))
                        type_err(*e, "ordering comparison needs numeric or string operands");
                    break;
                case CmpOp::Eq:
                case CmpOp::Ne:
                case CmpOp::Is:
                    if (!scalar(l) || !scalar(r))
                        type_err(*e, "equality needs scalar operands");
                    break;
                case CmpOp::In:
                    if (!scalar(l)) type_err(*e, "'in' needs a scalar left operand");
                    if (r != Ty::List) type_err(*e, "'in' needs a literal list right operand");
                    break;
                }
                return Ty::Bool;
            } else if constexpr (std::is_same_v<T, Temporal>) {
                Ty a = infer(n.a), b = infer(n.b);
                if (a != Ty::Event)
                    type_err(*e, "temporal operator applies to sensation(...) selectors");
                if (n.op == TemporalOp::During) {
                    if (b != Ty::Interval) type_err(*e, "DURING needs a [from, to] interval");
                } else if (b != Ty::Event) {
                    type_err(*e, "temporal operator applies to sensation(...) selectors");
                }
                return Ty::Bool;
            } else if constexpr (std::is_same_v<T, Agg>) {
                if (const auto* p = std::get_if<Path>(&n.selector->node)) {
                    if (p->segments.front() != "members")
                        type_err(*e, "aggregation selector must start with 'members'");
                    return n.op == AggOp::Count ? Ty::Int : Ty::Dec;
                }
                if (std::holds_alternative<EventSel>(n.selector->node)) {
                    if (n.op != AggOp::Count)
                        type_err(*e, "only COUNT applies to sensation selectors");
                    return Ty::Int;
                }
                type_err(*e, "aggregation selector must be members[.field] or sensation(...)");
            } else if constexpr (std::is_same_v<T, Path>) {
                return Ty::Any;
            } else if constexpr (std::is_same_v<T, Literal>) {
                switch (n.v.tag()) {
                case ValueTag::Bool: return Ty::Bool;
                case ValueTag::Int: return Ty::Int;
                case ValueTag::Decimal: return Ty::Dec;
                case ValueTag::String: return Ty::Str;
                case ValueTag::Null: return Ty::Null;
                default: return Ty::Any;
                }
            } else if constexpr (std::is_same_v<T, ListLit>) {
                return Ty::List;
            } else if constexpr (std::is_same_v<T, EventSel>) {
                return Ty::Event;
            } else if constexpr (std::is_same_v<T, Interval>) {
                return Ty::Interval;
            } else if constexpr (std::is_same_v<T, Has>) {
                return Ty::Bool;
            }
        },
        e->node);
}

} // namespace

void typecheck(const ExprPtr& expr) {
    Ty t = infer(expr);
    if (t == Ty::Event || t == Ty::Interval || t == Ty::List)
        type_err(*expr, "expression does not reduce to a value");
}

ExprPtr replace_role_atoms(const ExprPtr& expr, const std::set<std::string>& role_names) {
    auto touches_role = [&](const ExprPtr& e) {
        if (const auto* p = std::get_if<Path>(&e->node))
            return !p->segments.empty() && role_names.count(p->segments.front()) > 0;
        return false;
    };
    auto lit_true = [&]() {
        Expr t;
        t.node = Literal{Value(true)};
        return make(std::move(t));
    };
    return std::visit(
        [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Or>) {
                Expr e;
                e.node = Or{replace_role_atoms(n.l, role_names), replace_role_atoms(n.r, role_names)};
                return make(std::move(e));
            } else if constexpr (std::is_same_v<T, And>) {
                Expr e;
                e.node = And{replace_role_atoms(n.l, role_names), replace_role_atoms(n.r, role_names)};
                return make(std::move(e));
            } else if constexpr (std::is_same_v<T, Not>) {
                Expr e;
                e.node = Not{replace_role_atoms(n.e, role_names)};
                return make(std::move(e));
            } else if constexpr (std::is_same_v<T, Cmp>) {
                if (touches_role(n.l) || touches_role(n.r)) return lit_true();
                return expr;
            } else if constexpr (std::is_same_v<T, Has>) {
                if (role_names.count(n.subject)) return lit_true();
                return expr;
            } else {
                return expr;
            }
        },
        expr->node);
}

} // namespace holon::dsl
