// SPDX-License-Identifier: Apache-2.0
//
// Runtime values carried by trace events and state-vector components.
// A Value is one of {int, real, bool, str, intList}; equality is structural
// (an int 1 and a real 1.0 are different values for state identity, even
// though relational operators in properties compare them numerically).

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fsmrv {

enum class value_tag { vt_int, vt_real, vt_bool, vt_str, vt_int_list };

std::string tag_name(value_tag t);
// Throws parse_error on an unknown tag name.
value_tag tag_from_name(const std::string& name);

using int_list = std::vector<int64_t>;

class value {
  public:
    value() : v_(int64_t{0}) {}
    explicit value(int64_t i) : v_(i) {}
    explicit value(double d) : v_(d) {}
    explicit value(bool b) : v_(b) {}
    explicit value(std::string s) : v_(std::move(s)) {}
    explicit value(int_list l) : v_(std::move(l)) {}

    value_tag tag() const { return static_cast<value_tag>(v_.index()); }

    bool is_numeric() const { return tag() == value_tag::vt_int || tag() == value_tag::vt_real; }

    int64_t as_int() const { return std::get<int64_t>(v_); }
    double as_real() const { return std::get<double>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }
    const std::string& as_str() const { return std::get<std::string>(v_); }
    const int_list& as_list() const { return std::get<int_list>(v_); }

    // Numeric view regardless of int/real tag; only valid when is_numeric().
    double num() const { return tag() == value_tag::vt_int ? double(as_int()) : as_real(); }

    bool operator==(const value& o) const { return v_ == o.v_; }
    bool operator!=(const value& o) const { return !(*this == o); }
    bool operator<(const value& o) const { return v_ < o.v_; }  // arbitrary total order for maps

    size_t hash() const;

    // Canonical text used in state keys and diagnostics: 5, 3.25, true, "E", [1,2].
    std::string canon() const;

    // Wire encoding {"t":"int","v":5}; from_json validates tag/payload agreement.
    nlohmann::json to_json() const;
    static value from_json(const nlohmann::json& j);

  private:
    std::variant<int64_t, double, bool, std::string, int_list> v_;
};

// One cell of a state vector. monostate renders as "?" and stands for
// Undefined in concrete models and Unknown in abstract ones (Unknown is
// exactly the abstraction of Undefined, so one representation suffices).
// bool_abs/bucket_abs are the non-identity abstract values; an identity
// abstraction keeps the raw value as a plain `value`.
struct bool_abs {
    bool v;
    bool operator==(const bool_abs&) const = default;
};
struct bucket_abs {
    int idx;
    bool operator==(const bucket_abs&) const = default;
};

class component {
  public:
    component() : v_(std::monostate{}) {}
    explicit component(value v) : v_(std::move(v)) {}
    explicit component(bool_abs b) : v_(b) {}
    explicit component(bucket_abs b) : v_(b) {}

    static component undefined() { return component(); }

    bool is_undefined() const { return std::holds_alternative<std::monostate>(v_); }
    bool is_value() const { return std::holds_alternative<value>(v_); }
    bool is_bool_abs() const { return std::holds_alternative<bool_abs>(v_); }
    bool is_bucket() const { return std::holds_alternative<bucket_abs>(v_); }

    const value& as_value() const { return std::get<value>(v_); }
    bool_abs as_bool_abs() const { return std::get<bool_abs>(v_); }
    bucket_abs as_bucket() const { return std::get<bucket_abs>(v_); }

    bool operator==(const component& o) const { return v_ == o.v_; }
    bool operator!=(const component& o) const { return !(*this == o); }

    size_t hash() const;

    // Canonical text: "?" | value canon | "T"/"F" (bool abstraction) | "B<i>".
    std::string canon() const;

    nlohmann::json to_json() const;
    static component from_json(const nlohmann::json& j);

  private:
    std::variant<std::monostate, value, bool_abs, bucket_abs> v_;
};

using state_vector = std::vector<component>;

size_t hash_state(const state_vector& s);
std::string quote_string(const std::string& s);  // double-quoted with \" and \\ escapes
std::string real_to_string(double d);            // shortest round-trip text

}  // namespace fsmrv
