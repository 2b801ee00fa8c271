#include "kqent/jsonio.hpp"

#include <cmath>
#include <cstdio>

namespace kqent {

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "null";
    }
    if (std::isinf(x)) {
        return x > 0 ? "1e999" : "-1e999";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

void JsonWriter::separator() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!need_comma_.empty()) {
        if (need_comma_.back()) {
            out_ += ',';
        }
        need_comma_.back() = true;
    }
}

void JsonWriter::begin_object() {
    separator();
    out_ += '{';
    need_comma_.push_back(false);
}

void JsonWriter::end_object() {
    out_ += '}';
    need_comma_.pop_back();
}

void JsonWriter::begin_array() {
    separator();
    out_ += '[';
    need_comma_.push_back(false);
}

void JsonWriter::end_array() {
    out_ += ']';
    need_comma_.pop_back();
}

void JsonWriter::key(const std::string& name) {
    separator();
    out_ += '"';
    out_ += json_escape(name);
    out_ += "\":";
    pending_key_ = true;
}

void JsonWriter::value(double v) {
    separator();
    out_ += format_double(v);
}

void JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
}

void JsonWriter::value(long long v) {
    separator();
    out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
}

void JsonWriter::value(const std::string& v) {
    separator();
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
}

void JsonWriter::null_value() {
    separator();
    out_ += "null";
}

void JsonWriter::raw(const std::string& serialized) {
    separator();
    out_ += serialized;
}

} // namespace kqent
