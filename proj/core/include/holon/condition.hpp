#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "holon/value.hpp"

namespace holon::dsl {

enum class CmpOp { Gt, Lt, Ge, Le, Eq, Ne, Is, In };
enum class TemporalOp { Before, After, During };
enum class AggOp { Count, Average, Sum };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct And {
    ExprPtr l, r;
};
struct Or {
    ExprPtr l, r;
};
struct Not {
    ExprPtr e;
};
struct Cmp {
    CmpOp op;
    ExprPtr l, r;
};
struct Temporal {
    TemporalOp op;
    ExprPtr a, b;
};
struct Agg {
    AggOp op;
    ExprPtr selector;  // Path rooted at `members`, or EventSel (COUNT only)
};
struct Path {
    std::vector<std::string> segments;  // segments may be $vars, substituted at eval
};
struct Literal {
    Value v;
};
struct ListLit {
    std::vector<Value> items;
};
struct EventSel {
    std::string kind;  // sensation("KIND")
};
struct Interval {
    Tick lo{0}, hi{0};
};
struct Has {
    std::string subject;  // role name, $var or holon id
    std::string capability;
};

struct Expr {
    std::variant<And, Or, Not, Cmp, Temporal, Agg, Path, Literal, ListLit, EventSel, Interval, Has>
        node;
    int line{1};
    int col{1};
};

ExprPtr make(Expr e);

/// Parse and type-check condition source. Throws Error(SyntaxError) with
/// line/column and the expected token set, or Error(TypeError).
ExprPtr parse(const std::string& source);

/// Type-check an AST built programmatically (parse() already checks).
void typecheck(const ExprPtr& expr);

/// Canonical printed form; parse(print(e)) reproduces e.
std::string print(const ExprPtr& expr);

/// Structural equality, positions ignored.
bool equals(const ExprPtr& a, const ExprPtr& b);

struct BoundRole {
    HolonId holon;
    std::string resource;
};

struct MemberRef {
    std::string id;
    std::function<Value(const std::string& field)> field;
};

struct EventOccurrence {
    std::string kind;
    Tick t{0};
};

/// Read-only context for evaluation. Everything is optional: missing hooks
/// resolve to null, so evaluation stays total on empty contexts.
struct EvalContext {
    Tick now{0};
    std::map<std::string, std::string> vars;  // $e -> substitution
    std::map<std::string, BoundRole> roles;
    std::function<Value(const BoundRole&, const std::string& attribute)> role_attr;
    std::function<bool(const BoundRole&, const std::string& capability)> role_has;
    std::function<bool(const std::string& subject, const std::string& capability)> subject_has;
    std::function<Value(const std::vector<std::string>& path)> lookup;
    std::map<std::string, Value> event;         // "kind", "source", payload fields
    std::vector<EventOccurrence> event_log;     // sorted by timestamp
    std::vector<MemberRef> members;
};

/// Total evaluation: never throws for a type-checked expression. Comparisons
/// with a null operand are false; aggregates over empty selections yield
/// COUNT=0, SUM=0, AVERAGE=null.
Value evaluate(const ExprPtr& expr, const EvalContext& ctx);

/// evaluate() coerced for trigger use: only Bool(true) counts.
bool evaluate_bool(const ExprPtr& expr, const EvalContext& ctx);

/// BEFORE/AFTER compare last occurrences; DURING checks containment of any
/// occurrence in the closed interval.
bool temporal_eval(TemporalOp op, const std::string& kind_a, const std::string& kind_b, Tick lo,
                   Tick hi, const std::vector<EventOccurrence>& log);

/// Copy of the expression with every role-dependent atom (a `has` whose
/// subject is a listed role, or a comparison touching a path rooted at one)
/// replaced by `true`. Used to decide whether an unbindable behaviour is
/// deferred: the role-free remainder of the trigger must still hold.
ExprPtr replace_role_atoms(const ExprPtr& expr, const std::set<std::string>& role_names);

} // namespace holon::dsl
