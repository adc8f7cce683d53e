// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/model.hpp"

#include <algorithm>

#include "fsmrv/common.hpp"

namespace fsmrv {

std::string model_kind_name(model_kind k) {
    switch (k) {
        case model_kind::lsm: return "lsm";
        case model_kind::dsm: return "dsm";
        case model_kind::asm_: return "asm";
        case model_kind::path: return "path";
    }
    return "?";
}

model_kind model_kind_from_name(const std::string& s) {
    if (s == "lsm") return model_kind::lsm;
    if (s == "dsm") return model_kind::dsm;
    if (s == "asm") return model_kind::asm_;
    if (s == "path") return model_kind::path;
    throw config_error("unknown model kind '" + s + "'");
}

std::string model::state_key(const state_vector& s) const {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += attrs[i];
        out += '=';
        out += s[i].canon();
    }
    return out;
}

std::string model::labeled_key(const state_vector& s) const {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += attrs[i];
        out += '=';
        out += i < fns.size() ? fns[i].label(s[i]) : s[i].canon();
    }
    return out;
}

state_vector model::lsm_state(size_t i) const {
    state_vector s(attrs.size());  // all Undefined
    for (size_t k = 0; k < i; ++k) s[steps[k].attr] = steps[k].val;
    return s;
}

void model::walk(const std::function<void(size_t, const state_vector&)>& visit) const {
    state_vector s(attrs.size());
    visit(0, s);
    for (size_t k = 0; k < steps.size(); ++k) {
        s[steps[k].attr] = steps[k].val;
        visit(k + 1, s);
    }
}

graph_builder::graph_builder(model_kind kind, std::vector<std::string> attrs,
                             std::vector<value_tag> tags, std::vector<abstraction_fn> fns) {
    if (attrs.size() != tags.size() || attrs.size() != fns.size())
        throw model_error("graph_builder: attrs/tags/fns size mismatch");
    m_.kind = kind;
    m_.attrs = std::move(attrs);
    m_.tags = std::move(tags);
    m_.fns = std::move(fns);
    cur_.assign(m_.attrs.size(), component{});  // start: all Undefined/Unknown
    m_.states.push_back(cur_);
    m_.first_seq.push_back(0);
    index_[hash_state(cur_)].push_back(0);
}

uint32_t graph_builder::intern(const state_vector& s, uint64_t seq) {
    auto& bucket = index_[hash_state(s)];
    for (uint32_t id : bucket)
        if (m_.states[id] == s) return id;
    uint32_t id = static_cast<uint32_t>(m_.states.size());
    m_.states.push_back(s);
    m_.first_seq.push_back(seq);
    bucket.push_back(id);
    return id;
}

graph_builder::outcome graph_builder::add(const attr_write& w) {
    if (w.attr >= m_.attrs.size()) throw model_error("attribute index out of range");
    size_t before = m_.states.size();
    component next = apply_abstraction(m_.fns[w.attr], component{w.val});
    if (next == cur_[w.attr]) {
        // Self-loop on the current state: the vector is unchanged.
        auto& e = m_.edges[{cur_id_, cur_id_}];
        bool fresh = e.count == 0;
        if (fresh) e.first_seq = w.seq;
        e.count++;
        return {false, fresh, cur_id_};
    }
    cur_[w.attr] = std::move(next);
    uint32_t to = intern(cur_, w.seq);
    auto& e = m_.edges[{cur_id_, to}];
    bool fresh = e.count == 0;
    if (fresh) e.first_seq = w.seq;
    e.count++;
    outcome out{m_.states.size() > before, fresh, to};
    cur_id_ = to;
    return out;
}

model graph_builder::finish() && { return std::move(m_); }

path_builder::path_builder(path_spec spec) {
    m_.kind = model_kind::path;
    m_.attrs = {spec.attr};
    m_.tags = {spec.tag};
    m_.fns = {abstraction_fn::identity(spec.attr, spec.tag)};
    m_.states.push_back({component{}});  // start node
    m_.first_seq.push_back(0);
    m_.path = std::move(spec);
}

path_builder::outcome path_builder::add(const value& v, uint64_t seq) {
    int slot = m_.path->slot_of(v);
    if (slot < 0) return {};
    outcome out;
    out.retained = true;
    out.from_slot = prev_slot_;
    out.to_slot = slot;
    uint32_t to;
    if (slot_ids_[slot] == 0) {
        to = static_cast<uint32_t>(m_.states.size());
        m_.states.push_back({component{v}});
        m_.first_seq.push_back(seq);
        slot_ids_[slot] = to;
        m_.slot_state[slot] = static_cast<int>(to);
    } else {
        to = slot_ids_[slot];
    }
    auto& e = m_.edges[{prev_state_, to}];
    if (e.count == 0) {
        e.first_seq = seq;
        out.new_edge = true;
    }
    e.count++;
    prev_slot_ = slot;
    prev_state_ = to;
    return out;
}

model path_builder::finish() && { return std::move(m_); }

model build_lsm(std::vector<std::string> attrs, std::vector<value_tag> tags,
                const std::vector<attr_write>& writes) {
    if (attrs.size() != tags.size()) throw model_error("build_lsm: attrs/tags size mismatch");
    model m;
    m.kind = model_kind::lsm;
    m.fns.reserve(attrs.size());
    for (size_t i = 0; i < attrs.size(); ++i)
        m.fns.push_back(abstraction_fn::identity(attrs[i], tags[i]));
    m.attrs = std::move(attrs);
    m.tags = std::move(tags);
    m.steps.reserve(writes.size());
    for (const auto& w : writes) {
        if (w.attr >= m.attrs.size()) throw model_error("attribute index out of range");
        m.steps.push_back({w.attr, component{w.val}, w.seq});
    }
    return m;
}

static std::vector<abstraction_fn> identity_fns(const std::vector<std::string>& attrs,
                                                const std::vector<value_tag>& tags) {
    std::vector<abstraction_fn> fns;
    fns.reserve(attrs.size());
    for (size_t i = 0; i < attrs.size(); ++i)
        fns.push_back(abstraction_fn::identity(attrs[i], tags[i]));
    return fns;
}

model build_dsm(std::vector<std::string> attrs, std::vector<value_tag> tags,
                const std::vector<attr_write>& writes) {
    auto fns = identity_fns(attrs, tags);
    graph_builder b(model_kind::dsm, std::move(attrs), std::move(tags), std::move(fns));
    for (const auto& w : writes) b.add(w);
    return std::move(b).finish();
}

model build_asm(std::vector<std::string> attrs, std::vector<value_tag> tags,
                std::vector<abstraction_fn> fns, const std::vector<attr_write>& writes) {
    graph_builder b(model_kind::asm_, std::move(attrs), std::move(tags), std::move(fns));
    for (const auto& w : writes) b.add(w);
    return std::move(b).finish();
}

model build_path_model(path_spec spec, const std::vector<attr_write>& writes, size_t attr_idx) {
    path_builder b(std::move(spec));
    for (const auto& w : writes)
        if (w.attr == attr_idx && w.val.tag() == b.peek().tags[0]) b.add(w.val, w.seq);
    return std::move(b).finish();
}

model collapse_lsm(const model& lsm) {
    if (lsm.kind != model_kind::lsm) throw model_error("collapse_lsm requires an LSM");
    graph_builder b(model_kind::dsm, lsm.attrs, lsm.tags, lsm.fns);
    for (const auto& st : lsm.steps) {
        if (!st.val.is_value())
            throw model_error("collapse_lsm: non-concrete component in LSM");
        b.add({st.attr, st.val.as_value(), st.seq});
    }
    return std::move(b).finish();
}

}  // namespace fsmrv
