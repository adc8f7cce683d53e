// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/pipeline.hpp"

#include "fsmrv/common.hpp"

namespace fsmrv {

std::optional<size_t> model_schema::attr_index(const std::string& name) const {
    for (size_t i = 0; i < attrs.size(); ++i)
        if (attrs[i] == name) return i;
    return std::nullopt;
}

pipeline::pipeline(model_schema schema) : schema_(std::move(schema)) {
    if (schema_.attrs.size() != schema_.tags.size())
        throw config_error("model schema: attrs/tags size mismatch");
    for (size_t i = 0; i < schema_.attrs.size(); ++i) {
        if (!index_.emplace(schema_.attrs[i], i).second)
            throw config_error("model schema: duplicate attribute '" + schema_.attrs[i] + "'");
    }
    for (const auto& r : schema_.derives) {
        if (!index_.count(r.out))
            throw config_error("derived attribute '" + r.out + "' missing from model vector");
        for (const std::string* in : {&r.lat_attr, &r.lon_attr}) {
            const key_attribute* k = schema_.keys.find(*in);
            if (!k) throw config_error("derivation input '" + *in + "' is not a declared key");
            if (k->tag != value_tag::vt_int && k->tag != value_tag::vt_real)
                throw config_error("derivation input '" + *in + "' must be numeric");
        }
    }
    if (!schema_.control_name.empty() && !index_.count(schema_.control_name))
        throw config_error("control attribute '" + schema_.control_name +
                           "' missing from model vector");
}

void pipeline::feed(const event& e, std::vector<attr_write>& out) {
    if (!schema_.filter.admits(e)) return;

    if (e.kind == event_kind::field_write) {
        auto ki = schema_.keys.match_key(e);
        if (!ki) return;
        const key_attribute& k = schema_.keys.attrs()[*ki];
        input_latest_.insert_or_assign(k.name, *e.val);
        if (auto it = index_.find(k.name); it != index_.end())
            out.push_back({it->second, *e.val, e.seq});
        for (const auto& r : schema_.derives) {
            if (r.lat_attr != k.name && r.lon_attr != k.name) continue;
            auto la = input_latest_.find(r.lat_attr);
            auto lo = input_latest_.find(r.lon_attr);
            if (la == input_latest_.end() || lo == input_latest_.end()) continue;
            out.push_back({index_.at(r.out), r.compute(la->second.num(), lo->second.num()),
                           e.seq});
        }
        return;
    }

    if (!schema_.control_name.empty()) {
        if (auto ctl = derive_control(e, schema_.control))
            out.push_back({index_.at(schema_.control_name), value{std::move(*ctl)}, e.seq});
    }
}

}  // namespace fsmrv
