// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/keyattr.hpp"

#include "fsmrv/common.hpp"
#include "fsmrv/geo.hpp"

namespace fsmrv {

key_selector key_selector::parse(const std::string& text) {
    // Shape: qname[:inst].field — the field is the segment after the LAST dot.
    size_t dot = text.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= text.size())
        throw parse_error("selector '" + text + "' must look like pkg.Class.field");
    key_selector s;
    s.field = text.substr(dot + 1);
    std::string head = text.substr(0, dot);
    size_t colon = head.rfind(':');
    if (colon != std::string::npos) {
        std::string inst = head.substr(colon + 1);
        if (inst.empty()) throw parse_error("selector '" + text + "' has an empty instance id");
        try {
            size_t used = 0;
            s.instance = std::stoll(inst, &used);
            if (used != inst.size()) throw std::invalid_argument(inst);
        } catch (const std::exception&) {
            throw parse_error("selector '" + text + "' has a non-integer instance id");
        }
        head = head.substr(0, colon);
    }
    if (head.empty()) throw parse_error("selector '" + text + "' has an empty class name");
    s.klass = head;
    return s;
}

std::string key_selector::text() const {
    std::string t = klass;
    if (instance) t += ":" + std::to_string(*instance);
    return t + "." + field;
}

void key_attribute_set::add(key_attribute k) {
    for (const auto& a : attrs_) {
        if (a.name == k.name) throw config_error("duplicate key attribute name '" + k.name + "'");
        if (a.sel.klass == k.sel.klass && a.sel.field == k.sel.field &&
            a.sel.instance == k.sel.instance)
            throw config_error("duplicate selector '" + k.sel.text() + "'");
    }
    attrs_.push_back(std::move(k));
}

const key_attribute* key_attribute_set::find(const std::string& name) const {
    for (const auto& a : attrs_)
        if (a.name == name) return &a;
    return nullptr;
}

std::optional<size_t> key_attribute_set::match_key(const event& e) const {
    if (e.kind != event_kind::field_write) return std::nullopt;
    std::optional<size_t> agnostic;
    std::optional<size_t> specific;
    for (size_t i = 0; i < attrs_.size(); i++) {
        const key_selector& s = attrs_[i].sel;
        if (s.klass != e.klass || s.field != e.field) continue;
        if (s.instance) {
            if (e.instance && *e.instance == *s.instance) specific = i;
        } else {
            agnostic = i;
        }
    }
    std::optional<size_t> hit = specific ? specific : agnostic;
    if (!hit) return std::nullopt;
    const key_attribute& a = attrs_[*hit];
    if (!e.val || e.val->tag() != a.tag)
        throw trace_error("type mismatch for key attribute '" + a.name + "' at seq " +
                          std::to_string(e.seq) + ": declared " + tag_name(a.tag) + ", got " +
                          (e.val ? tag_name(e.val->tag()) : std::string("nothing")));
    return hit;
}

bool inclusion_filter::admits(const std::string& qname) const {
    if (patterns_.empty()) return true;
    for (const auto& p : patterns_) {
        if (!p.empty() && p.back() == '*') {
            if (qname.rfind(p.substr(0, p.size() - 1), 0) == 0) return true;
        } else if (qname == p) {
            return true;
        }
    }
    return false;
}

bool inclusion_filter::admits(const event& e) const {
    if (patterns_.empty()) return true;
    return admits(e.kind == event_kind::field_write ? e.klass : e.method);
}

control_level control_level_from_name(const std::string& name) {
    if (name == "package") return control_level::package;
    if (name == "class") return control_level::klass;
    if (name == "method") return control_level::method;
    if (name == "thread") return control_level::thread;
    throw parse_error("unknown control level '" + name + "'");
}

std::string control_level_name(control_level l) {
    switch (l) {
        case control_level::package: return "package";
        case control_level::klass: return "class";
        case control_level::method: return "method";
        case control_level::thread: return "thread";
    }
    return "?";
}

std::optional<std::string> derive_control(const event& e, control_level level) {
    if (e.kind != event_kind::method_entry) return std::nullopt;
    const std::string& m = e.method;
    size_t last = m.rfind('.');
    if (level == control_level::method) return m;
    if (level == control_level::thread) return e.thread + "#" + m;
    if (last == std::string::npos) return m;  // degenerate qname: no class part
    std::string cls = m.substr(0, last);
    if (level == control_level::klass) return cls;
    size_t prev = cls.rfind('.');
    if (prev == std::string::npos) return cls;  // class without package
    return cls.substr(0, prev);
}

value derivation_rule::compute(double lat, double lon) const {
    if (kind == derivation_kind::haversine)
        return value(haversine_m(lat, lon, ref_lat, ref_lon));
    return value(compass_dir(lat, lon, ref_lat, ref_lon, epsilon_meters));
}

}  // namespace fsmrv
