// SPDX-License-Identifier: Apache-2.0
//
// Key-attribute selectors, inclusion filters, control-attribute synthesis
// levels, and derived-attribute rules: everything that turns raw execution
// events into named attribute writes.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsmrv/event.hpp"
#include "fsmrv/value.hpp"

namespace fsmrv {

// Selector "pkg.Class.field" or instance-specific "pkg.Class:7.field".
struct key_selector {
    std::string klass;
    std::optional<int64_t> instance;
    std::string field;

    // Parses "<qname>[:<inst>].<field>"; throws parse_error.
    static key_selector parse(const std::string& text);
    std::string text() const;
};

struct key_attribute {
    std::string name;
    key_selector sel;
    value_tag tag = value_tag::vt_int;
};

// Declared keys, in declaration order. An instance-specific selector shadows
// an instance-agnostic one on the same (class, field).
class key_attribute_set {
  public:
    void add(key_attribute k);  // throws config_error on duplicate name/selector
    const std::vector<key_attribute>& attrs() const { return attrs_; }
    const key_attribute* find(const std::string& name) const;

    // Returns the index of the matching key for a fieldWrite event, or
    // nullopt when no selector matches. Throws trace_error when the matched
    // attribute's declared tag disagrees with the event value's tag.
    std::optional<size_t> match_key(const event& e) const;

  private:
    std::vector<key_attribute> attrs_;
};

// Prefix patterns over qualified names: "phil.*" admits names starting with
// "phil."; a pattern without '*' must match exactly. Empty filter admits all.
class inclusion_filter {
  public:
    void add_pattern(std::string pat) { patterns_.push_back(std::move(pat)); }
    bool empty() const { return patterns_.empty(); }
    bool admits(const std::string& qname) const;
    // fieldWrite events are filtered by class name, method events by method name.
    bool admits(const event& e) const;

  private:
    std::vector<std::string> patterns_;
};

enum class control_level { package, klass, method, thread };

control_level control_level_from_name(const std::string& name);  // throws parse_error
std::string control_level_name(control_level l);

// Control value for a methodEntry event at the given level:
//   package  -> "org.oauth"            (method qname minus class and method)
//   class    -> "org.oauth.Client"
//   method   -> "org.oauth.Client.requestService"
//   thread   -> "main#org.oauth.Client.requestService"
// Returns nullopt for fieldWrite and methodExit events (only entries define
// the current control point; exits are deliberately ignored).
std::optional<std::string> derive_control(const event& e, control_level level);

enum class derivation_kind { haversine, compass };

// Synthesizes outName from the latest values of two input attributes.
// haversine -> real distance in meters from (refLat, refLon);
// compass   -> str sector of the bearing from (refLat, refLon), one of
//              N NE E SE S SW W NW, or "C" when closer than epsilonMeters.
struct derivation_rule {
    std::string out;
    derivation_kind kind = derivation_kind::haversine;
    std::string lat_attr, lon_attr;
    double ref_lat = 0, ref_lon = 0;
    double epsilon_meters = 1.0;

    value_tag out_tag() const {
        return kind == derivation_kind::haversine ? value_tag::vt_real : value_tag::vt_str;
    }
    value compute(double lat, double lon) const;
};

}  // namespace fsmrv
