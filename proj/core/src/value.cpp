#include "holon/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace holon {

namespace {
constexpr double kDecimalTolerance = 1e-9;
} // namespace

bool operator==(const Location& a, const Location& b) {
    return std::fabs(a.lat - b.lat) <= kDecimalTolerance &&
           std::fabs(a.lon - b.lon) <= kDecimalTolerance;
}

double distance(const Location& a, const Location& b) {
    const double dx = a.lat - b.lat;
    const double dy = a.lon - b.lon;
    return std::sqrt(dx * dx + dy * dy);
}

double Value::as_number() const {
    if (is_int()) return static_cast<double>(as_int());
    if (is_decimal()) return as_decimal();
    return 0.0;
}

bool operator==(const Value& a, const Value& b) {
    if (a.tag() != b.tag()) return false;
    switch (a.tag()) {
    case ValueTag::Null: return true;
    case ValueTag::Bool: return a.as_bool() == b.as_bool();
    case ValueTag::Int: return a.as_int() == b.as_int();
    case ValueTag::Decimal: return std::fabs(a.as_decimal() - b.as_decimal()) <= kDecimalTolerance;
    case ValueTag::String: return a.as_string() == b.as_string();
    case ValueTag::Loc: return a.as_location() == b.as_location();
    }
    return false;
}

bool Value::less(const Value& a, const Value& b) {
    if (a.tag() != b.tag()) return false;
    switch (a.tag()) {
    case ValueTag::Int: return a.as_int() < b.as_int();
    case ValueTag::Decimal: return a.as_decimal() < b.as_decimal() - kDecimalTolerance;
    case ValueTag::String: return a.as_string() < b.as_string();
    default: return false;
    }
}

std::string format_decimal(double d) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    std::string s(buf, end);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string Value::to_string() const {
    switch (tag()) {
    case ValueTag::Null: return "null";
    case ValueTag::Bool: return as_bool() ? "true" : "false";
    case ValueTag::Int: return std::to_string(as_int());
    case ValueTag::Decimal: return format_decimal(as_decimal());
    case ValueTag::String: return as_string();
    case ValueTag::Loc: {
        const auto& l = as_location();
        return "(" + format_decimal(l.lat) + ", " + format_decimal(l.lon) + ")";
    }
    }
    return "null";
}

} // namespace holon
