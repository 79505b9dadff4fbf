// report_io.hpp — Deterministic report serialization. Doubles are printed
// at 17 significant digits so every numeric round-trips through text to
// the same value, and field order is fixed so identical inputs produce
// byte-identical output.

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "jcm/report.hpp"

namespace jcm {

std::string format_double(double x); // %.17g
std::string json_escape(const std::string& s);

class JsonValue {
public:
    using Array = std::vector<JsonValue>;
    using Object = std::vector<std::pair<std::string, JsonValue>>; // insertion order

    JsonValue() : value_(nullptr) {}
    JsonValue(std::nullptr_t) : value_(nullptr) {}
    JsonValue(bool b) : value_(b) {}
    JsonValue(int i) : value_(static_cast<long long>(i)) {}
    JsonValue(long long i) : value_(i) {}
    JsonValue(double d) : value_(d) {}
    JsonValue(const char* s) : value_(std::string(s)) {}
    JsonValue(std::string s) : value_(std::move(s)) {}
    JsonValue(Array a) : value_(std::move(a)) {}
    JsonValue(Object o) : value_(std::move(o)) {}

    static JsonValue object() { return JsonValue(Object{}); }
    static JsonValue array() { return JsonValue(Array{}); }

    JsonValue& set(std::string key, JsonValue v);
    JsonValue& push(JsonValue v);

    std::string dump(int indent = 2) const;

private:
    void write(std::string& out, int indent, int depth) const;

    std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> value_;
};

JsonValue to_json(const CheckEntry& entry);
JsonValue to_json(const ResidualReport& report);

// One CSV line, LF-terminated by the caller; fields are joined with ','.
std::string csv_row(const std::vector<std::string>& fields);

} // namespace jcm
