// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/export.hpp"

#include <sstream>

#include "fsmrv/common.hpp"

namespace fsmrv {

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string node_label(const model& m, const state_vector& s, bool compact) {
    if (!compact) return m.labeled_key(s);
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += i < m.fns.size() ? m.fns[i].label(s[i]) : s[i].canon();
    }
    return out;
}

bool has_unknown(const state_vector& s) {
    for (const auto& c : s)
        if (c.is_undefined()) return true;
    return false;
}

void emit_node(std::ostringstream& os, const model& m, const render_options& opts, size_t id,
               const state_vector& s, bool is_start) {
    std::string color;
    if (is_start) color = "green";
    else if (has_unknown(s)) color = "gray";
    if (auto it = opts.highlight.find(m.state_key(s)); it != opts.highlight.end())
        color = it->second;
    os << "  s" << id << " [label=\"" << dot_escape(node_label(m, s, opts.compact)) << "\"";
    if (!color.empty()) os << ", style=filled, fillcolor=" << color;
    os << "];\n";
}

}  // namespace

std::string to_dot(const model& m, const render_options& opts) {
    std::ostringstream os;
    os << "digraph " << model_kind_name(m.kind) << " {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=box];\n";
    if (m.kind == model_kind::lsm) {
        m.walk([&](size_t i, const state_vector& s) { emit_node(os, m, opts, i, s, i == 0); });
        for (size_t i = 0; i < m.steps.size(); ++i) {
            os << "  s" << i << " -> s" << i + 1;
            if (opts.show_counts) os << " [label=\"" << m.steps[i].seq << "\"]";
            os << ";\n";
        }
    } else {
        for (size_t i = 0; i < m.states.size(); ++i)
            emit_node(os, m, opts, i, m.states[i], i == 0);
        for (const auto& [k, info] : m.edges) {
            os << "  s" << k.first << " -> s" << k.second;
            if (opts.show_counts) os << " [label=\"" << info.count << "\"]";
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

nlohmann::json model_to_json(const model& m) {
    nlohmann::json j;
    j["fsmrv"] = 1;
    j["kind"] = model_kind_name(m.kind);
    j["attrs"] = m.attrs;
    nlohmann::json tags = nlohmann::json::array();
    for (auto t : m.tags) tags.push_back(tag_name(t));
    j["tags"] = std::move(tags);
    nlohmann::json fns = nlohmann::json::array();
    for (const auto& f : m.fns) fns.push_back(f.to_json());
    j["fns"] = std::move(fns);

    if (m.kind == model_kind::lsm) {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& st : m.steps)
            steps.push_back({{"attr", st.attr}, {"val", st.val.to_json()}, {"seq", st.seq}});
        j["steps"] = std::move(steps);
        return j;
    }

    nlohmann::json states = nlohmann::json::array();
    for (size_t i = 0; i < m.states.size(); ++i) {
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& c : m.states[i]) comps.push_back(c.to_json());
        states.push_back({{"components", std::move(comps)}, {"firstSeq", m.first_seq[i]}});
    }
    j["states"] = std::move(states);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [k, info] : m.edges)
        edges.push_back({{"from", k.first},
                         {"to", k.second},
                         {"count", info.count},
                         {"firstSeq", info.first_seq}});
    j["edges"] = std::move(edges);

    if (m.kind == model_kind::path && m.path) {
        const path_spec& ps = *m.path;
        j["path"] = {{"name", ps.name},
                     {"attr", ps.attr},
                     {"tag", tag_name(ps.tag)},
                     {"slots", {ps.slot_text[0], ps.slot_text[1], ps.slot_text[2]}}};
        j["slotState"] = m.slot_state;
    }
    return j;
}

std::string model_to_json_text(const model& m) { return model_to_json(m).dump(2); }

model model_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object() || j.value("fsmrv", 0) != 1)
            throw model_error("not a version-1 model dump");
        model m;
        m.kind = model_kind_from_name(j.at("kind").get<std::string>());
        m.attrs = j.at("attrs").get<std::vector<std::string>>();
        for (const auto& t : j.at("tags")) m.tags.push_back(tag_from_name(t.get<std::string>()));
        if (m.attrs.size() != m.tags.size()) throw model_error("attrs/tags size mismatch");
        const auto& fns = j.at("fns");
        if (fns.size() != m.attrs.size()) throw model_error("fns size mismatch");
        for (size_t i = 0; i < m.attrs.size(); ++i)
            m.fns.push_back(abstraction_fn::from_json(fns[i], m.attrs[i], m.tags[i]));

        if (m.kind == model_kind::lsm) {
            for (const auto& st : j.at("steps")) {
                size_t attr = st.at("attr").get<size_t>();
                if (attr >= m.attrs.size()) throw model_error("step attribute out of range");
                m.steps.push_back({attr, component::from_json(st.at("val")),
                                   st.at("seq").get<uint64_t>()});
            }
            return m;
        }

        for (const auto& st : j.at("states")) {
            state_vector sv;
            for (const auto& c : st.at("components")) sv.push_back(component::from_json(c));
            if (sv.size() != m.attrs.size()) throw model_error("state width mismatch");
            m.states.push_back(std::move(sv));
            m.first_seq.push_back(st.at("firstSeq").get<uint64_t>());
        }
        if (m.states.empty()) throw model_error("graph model needs a start state");
        for (const auto& e : j.at("edges")) {
            uint32_t from = e.at("from").get<uint32_t>(), to = e.at("to").get<uint32_t>();
            if (from >= m.states.size() || to >= m.states.size())
                throw model_error("edge endpoint out of range");
            m.edges[{from, to}] = {e.at("count").get<uint64_t>(),
                                   e.at("firstSeq").get<uint64_t>()};
        }

        if (m.kind == model_kind::path) {
            const auto& pj = j.at("path");
            const auto& slots = pj.at("slots");
            std::string text = "P[(" + slots.at(0).get<std::string>() + ") ~~> (" +
                               slots.at(1).get<std::string>() + ") ~~> (" +
                               slots.at(2).get<std::string>() + ")]";
            expr_ptr p = parse_property(text, "model dump");
            m.path = path_spec::from_exprs(pj.at("name").get<std::string>(),
                                           pj.at("attr").get<std::string>(),
                                           tag_from_name(pj.at("tag").get<std::string>()),
                                           {p->slots[0], p->slots[1], p->slots[2]});
            auto ss = j.at("slotState").get<std::vector<int>>();
            if (ss.size() != 3) throw model_error("slotState needs three entries");
            for (int s = 0; s < 3; ++s) {
                if (ss[s] >= 0 && static_cast<size_t>(ss[s]) >= m.states.size())
                    throw model_error("slotState out of range");
                m.slot_state[s] = ss[s];
            }
        }
        return m;
    } catch (const nlohmann::json::exception& ex) {
        throw model_error(std::string("malformed model dump: ") + ex.what());
    }
}

model model_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw model_error("model dump is not valid JSON");
    return model_from_json(j);
}

}  // namespace fsmrv
