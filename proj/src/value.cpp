// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/value.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "fsmrv/common.hpp"

namespace fsmrv {

std::string tag_name(value_tag t) {
    switch (t) {
        case value_tag::vt_int: return "int";
        case value_tag::vt_real: return "real";
        case value_tag::vt_bool: return "bool";
        case value_tag::vt_str: return "str";
        case value_tag::vt_int_list: return "intList";
    }
    return "?";
}

value_tag tag_from_name(const std::string& name) {
    if (name == "int") return value_tag::vt_int;
    if (name == "real") return value_tag::vt_real;
    if (name == "bool") return value_tag::vt_bool;
    if (name == "str") return value_tag::vt_str;
    if (name == "intList") return value_tag::vt_int_list;
    throw parse_error("unknown value tag '" + name + "'");
}

std::string real_to_string(double d) {
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
    (void)ec;
    return std::string(buf, p);
}

std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

static void hash_mix(size_t& h, size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

size_t value::hash() const {
    size_t h = v_.index();
    switch (tag()) {
        case value_tag::vt_int: hash_mix(h, std::hash<int64_t>{}(as_int())); break;
        case value_tag::vt_real: hash_mix(h, std::hash<double>{}(as_real())); break;
        case value_tag::vt_bool: hash_mix(h, std::hash<bool>{}(as_bool())); break;
        case value_tag::vt_str: hash_mix(h, std::hash<std::string>{}(as_str())); break;
        case value_tag::vt_int_list:
            for (int64_t x : as_list()) hash_mix(h, std::hash<int64_t>{}(x));
            break;
    }
    return h;
}

std::string value::canon() const {
    switch (tag()) {
        case value_tag::vt_int: return std::to_string(as_int());
        case value_tag::vt_real: return real_to_string(as_real());
        case value_tag::vt_bool: return as_bool() ? "true" : "false";
        case value_tag::vt_str: return quote_string(as_str());
        case value_tag::vt_int_list: {
            std::string out = "[";
            for (size_t i = 0; i < as_list().size(); i++) {
                if (i) out += ",";
                out += std::to_string(as_list()[i]);
            }
            return out + "]";
        }
    }
    return "?";
}

nlohmann::json value::to_json() const {
    nlohmann::json j;
    j["t"] = tag_name(tag());
    switch (tag()) {
        case value_tag::vt_int: j["v"] = as_int(); break;
        case value_tag::vt_real: j["v"] = as_real(); break;
        case value_tag::vt_bool: j["v"] = as_bool(); break;
        case value_tag::vt_str: j["v"] = as_str(); break;
        case value_tag::vt_int_list: j["v"] = as_list(); break;
    }
    return j;
}

value value::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("t") || !j.contains("v"))
        throw parse_error("value must be an object with 't' and 'v'");
    if (!j["t"].is_string()) throw parse_error("value tag 't' must be a string");
    value_tag t = tag_from_name(j["t"].get<std::string>());
    const nlohmann::json& v = j["v"];
    switch (t) {
        case value_tag::vt_int:
            if (!v.is_number_integer()) throw parse_error("tag 'int' requires an integer payload");
            return value(v.get<int64_t>());
        case value_tag::vt_real:
            if (!v.is_number()) throw parse_error("tag 'real' requires a numeric payload");
            return value(v.get<double>());
        case value_tag::vt_bool:
            if (!v.is_boolean()) throw parse_error("tag 'bool' requires a boolean payload");
            return value(v.get<bool>());
        case value_tag::vt_str:
            if (!v.is_string()) throw parse_error("tag 'str' requires a string payload");
            return value(v.get<std::string>());
        case value_tag::vt_int_list: {
            if (!v.is_array()) throw parse_error("tag 'intList' requires an array payload");
            int_list l;
            for (const auto& e : v) {
                if (!e.is_number_integer())
                    throw parse_error("tag 'intList' requires integer elements");
                l.push_back(e.get<int64_t>());
            }
            return value(std::move(l));
        }
    }
    throw parse_error("unreachable value tag");
}

size_t component::hash() const {
    size_t h = v_.index() * 0x9e3779b9u + 1;
    if (is_value()) hash_mix(h, as_value().hash());
    if (is_bool_abs()) hash_mix(h, as_bool_abs().v ? 2 : 3);
    if (is_bucket()) hash_mix(h, std::hash<int>{}(as_bucket().idx));
    return h;
}

std::string component::canon() const {
    if (is_undefined()) return "?";
    if (is_value()) return as_value().canon();
    if (is_bool_abs()) return as_bool_abs().v ? "T" : "F";
    return "B" + std::to_string(as_bucket().idx);
}

nlohmann::json component::to_json() const {
    if (is_undefined()) return nlohmann::json{{"t", "unknown"}};
    if (is_value()) return as_value().to_json();
    if (is_bool_abs()) return nlohmann::json{{"t", "boolAbs"}, {"v", as_bool_abs().v}};
    return nlohmann::json{{"t", "bucket"}, {"v", as_bucket().idx}};
}

component component::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("t")) throw parse_error("component must have a 't' tag");
    std::string t = j["t"].get<std::string>();
    if (t == "unknown") return component::undefined();
    if (t == "boolAbs") return component(bool_abs{j.at("v").get<bool>()});
    if (t == "bucket") return component(bucket_abs{j.at("v").get<int>()});
    return component(value::from_json(j));
}

size_t hash_state(const state_vector& s) {
    size_t h = s.size();
    for (const auto& c : s) hash_mix(h, c.hash());
    return h;
}

}  // namespace fsmrv
