#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zlrr/bigint.hpp"

namespace zlrr {

/// 17 significant digits, enough to round-trip a double exactly.
std::string float17(double x);

/// Joins pre-rendered fields with sep. Fields are expected to be free of
/// separators and newlines (all emitters here produce plain tokens).
std::string join(const std::vector<std::string>& fields, char sep = ',');

/// Streaming JSON emitter with fully deterministic bytes: keys appear in call
/// order, floats go through float17, exact integers are emitted as decimal
/// strings so nothing is rounded to fit a JSON number.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& string_value(const std::string& s);
    JsonWriter& int_value(std::int64_t v);
    JsonWriter& uint_value(std::uint64_t v);
    JsonWriter& bigint_value(const Int& v);
    JsonWriter& float_value(double v);
    JsonWriter& bool_value(bool v);
    JsonWriter& null_value();

    /// Finished document plus trailing newline.
    std::string take();

  private:
    void before_value();
    void newline_indent();

    std::string out_;
    /// One frame per open scope: 'o' object, 'a' array; true once the scope
    /// has at least one element.
    std::vector<std::pair<char, bool>> scopes_;
    bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace zlrr
