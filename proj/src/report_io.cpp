#include "jcm/report_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace jcm {

std::string format_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

JsonValue& JsonValue::set(std::string key, JsonValue v) {
    auto* obj = std::get_if<Object>(&value_);
    if (!obj)
        throw std::logic_error("JsonValue::set on non-object");
    obj->emplace_back(std::move(key), std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    auto* arr = std::get_if<Array>(&value_);
    if (!arr)
        throw std::logic_error("JsonValue::push on non-array");
    arr->push_back(std::move(v));
    return *this;
}

void JsonValue::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');

    if (std::holds_alternative<std::nullptr_t>(value_)) {
        out += "null";
    } else if (const auto* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (const auto* i = std::get_if<long long>(&value_)) {
        out += std::to_string(*i);
    } else if (const auto* d = std::get_if<double>(&value_)) {
        out += format_double(*d);
    } else if (const auto* s = std::get_if<std::string>(&value_)) {
        out += '"';
        out += json_escape(*s);
        out += '"';
    } else if (const auto* arr = std::get_if<Array>(&value_)) {
        if (arr->empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < arr->size(); ++k) {
            out += pad_in;
            (*arr)[k].write(out, indent, depth + 1);
            if (k + 1 < arr->size())
                out += ',';
            out += '\n';
        }
        out += pad + "]";
    } else if (const auto* obj = std::get_if<Object>(&value_)) {
        if (obj->empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        for (std::size_t k = 0; k < obj->size(); ++k) {
            out += pad_in + '"' + json_escape((*obj)[k].first) + "\": ";
            (*obj)[k].second.write(out, indent, depth + 1);
            if (k + 1 < obj->size())
                out += ',';
            out += '\n';
        }
        out += pad + "}";
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    return out;
}

JsonValue to_json(const CheckEntry& entry) {
    JsonValue v = JsonValue::object();
    v.set("id", entry.id);
    v.set("value", entry.value ? JsonValue(*entry.value) : JsonValue(nullptr));
    v.set("residual", entry.residual ? JsonValue(*entry.residual) : JsonValue(nullptr));
    v.set("tolerance", entry.tolerance ? JsonValue(*entry.tolerance) : JsonValue(nullptr));
    v.set("pass", entry.pass);
    v.set("informational", entry.informational);
    v.set("note", entry.note);
    return v;
}

JsonValue to_json(const ResidualReport& report) {
    JsonValue checks = JsonValue::array();
    for (const CheckEntry& e : report.entries)
        checks.push(to_json(e));
    JsonValue v = JsonValue::object();
    v.set("checks", std::move(checks));
    v.set("overall_pass", report.all_pass());
    return v;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out += ',';
        out += fields[i];
    }
    return out;
}

} // namespace jcm
