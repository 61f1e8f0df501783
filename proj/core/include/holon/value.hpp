#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace holon {

using Tick = std::uint64_t;
using HolonId = std::string;

/// Plain lat/long pair. Distances are planar Euclidean; no geodesy.
struct Location {
    double lat{0.0};
    double lon{0.0};

    friend bool operator==(const Location& a, const Location& b);
};

double distance(const Location& a, const Location& b);

enum class ValueTag : std::uint8_t {
    Null = 0,
    Bool,
    Int,
    Decimal,
    String,
    Loc,
};

/// Closed tagged union carried by holon state, capability attributes,
/// sensation payloads and condition evaluation. Equality and ordering are
/// defined only between values of the same tag; decimals compare with an
/// absolute tolerance of 1e-9.
class Value {
public:
    Value() : data_(std::monostate{}) {}
    Value(bool b) : data_(b) {}
    Value(std::int64_t i) : data_(i) {}
    Value(int i) : data_(static_cast<std::int64_t>(i)) {}
    Value(double d) : data_(d) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(Location l) : data_(l) {}

    static Value null() { return Value(); }

    ValueTag tag() const { return static_cast<ValueTag>(data_.index()); }
    bool is_null() const { return tag() == ValueTag::Null; }
    bool is_bool() const { return tag() == ValueTag::Bool; }
    bool is_int() const { return tag() == ValueTag::Int; }
    bool is_decimal() const { return tag() == ValueTag::Decimal; }
    bool is_string() const { return tag() == ValueTag::String; }
    bool is_location() const { return tag() == ValueTag::Loc; }
    bool is_numeric() const { return is_int() || is_decimal(); }

    bool as_bool() const { return std::get<bool>(data_); }
    std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
    double as_decimal() const { return std::get<double>(data_); }
    const std::string& as_string() const { return std::get<std::string>(data_); }
    const Location& as_location() const { return std::get<Location>(data_); }

    /// Numeric view regardless of Int/Decimal tag; 0.0 for anything else.
    double as_number() const;

    /// True iff this is Bool(true). Null and every non-bool value count as
    /// false, which keeps trigger evaluation total.
    bool truthy() const { return is_bool() && as_bool(); }

    /// Same-tag equality; mixed tags compare unequal, decimals within 1e-9.
    friend bool operator==(const Value& a, const Value& b);
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

    /// Strict same-tag ordering for Int, Decimal and String.
    /// Returns false for mixed tags and for unordered tags (bool, location, null).
    static bool less(const Value& a, const Value& b);

    /// Canonical text form used in traces and DSL printing: null, true/false,
    /// decimal integers, shortest round-trip decimals (always with '.' or
    /// exponent), bare strings, "(lat, lon)" locations.
    std::string to_string() const;

private:
    std::variant<std::monostate, bool, std::int64_t, double, std::string, Location> data_;
};

using ValueMap = std::map<std::string, Value>;

/// Shortest decimal text that round-trips through parsing, normalized so it
/// can never be confused with an integer literal.
std::string format_decimal(double d);

} // namespace holon
