#include "zlrr/format.hpp"

#include <cstdio>

namespace zlrr {

std::string float17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const std::vector<std::string>& fields, char sep) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(sep);
        out += fields[i];
    }
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    return out;
}

void JsonWriter::newline_indent() {
    out_.push_back('\n');
    out_.append(2 * scopes_.size(), ' ');
}

void JsonWriter::before_value() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (scopes_.empty()) return;
    if (scopes_.back().second) out_.push_back(',');
    scopes_.back().second = true;
    newline_indent();
}

JsonWriter& JsonWriter::begin_object() {
    before_value();
    out_.push_back('{');
    scopes_.emplace_back('o', false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    bool had_elements = scopes_.back().second;
    scopes_.pop_back();
    if (had_elements) newline_indent();
    out_.push_back('}');
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    before_value();
    out_.push_back('[');
    scopes_.emplace_back('a', false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    bool had_elements = scopes_.back().second;
    scopes_.pop_back();
    if (had_elements) newline_indent();
    out_.push_back(']');
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    if (scopes_.back().second) out_.push_back(',');
    scopes_.back().second = true;
    newline_indent();
    out_.push_back('"');
    out_ += json_escape(k);
    out_ += "\": ";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::string_value(const std::string& s) {
    before_value();
    out_.push_back('"');
    out_ += json_escape(s);
    out_.push_back('"');
    return *this;
}

JsonWriter& JsonWriter::int_value(std::int64_t v) {
    before_value();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::uint_value(std::uint64_t v) {
    before_value();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::bigint_value(const Int& v) {
    before_value();
    out_.push_back('"');
    out_ += to_decimal(v);
    out_.push_back('"');
    return *this;
}

JsonWriter& JsonWriter::float_value(double v) {
    before_value();
    out_ += float17(v);
    return *this;
}

JsonWriter& JsonWriter::bool_value(bool v) {
    before_value();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::null_value() {
    before_value();
    out_ += "null";
    return *this;
}

std::string JsonWriter::take() {
    out_.push_back('\n');
    return std::move(out_);
}

}  // namespace zlrr
