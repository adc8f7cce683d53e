// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/event.hpp"

#include <json.hpp>

#include "fsmrv/common.hpp"

namespace fsmrv {

using nlohmann::json;

static std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw parse_error(std::string("record requires string field '") + key + "'");
    return j[key].get<std::string>();
}

event parse_event(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed JSON record: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("trace record must be a JSON object");
    if (!j.contains("seq") || !j["seq"].is_number_integer())
        throw parse_error("record requires integer field 'seq'");
    int64_t seq = j["seq"].get<int64_t>();
    if (seq < 1) throw parse_error("'seq' must be >= 1");

    event e;
    e.seq = uint64_t(seq);
    e.thread = require_string(j, "thread");
    std::string kind = require_string(j, "kind");
    if (kind == "fieldWrite") {
        e.kind = event_kind::field_write;
        e.klass = require_string(j, "class");
        e.field = require_string(j, "field");
        if (j.contains("instance")) {
            if (!j["instance"].is_number_integer())
                throw parse_error("'instance' must be an integer");
            e.instance = j["instance"].get<int64_t>();
        }
        if (!j.contains("value")) throw parse_error("fieldWrite requires 'value'");
        e.val = value::from_json(j["value"]);
    } else if (kind == "methodEntry" || kind == "methodExit") {
        e.kind = kind == "methodEntry" ? event_kind::method_entry : event_kind::method_exit;
        e.method = require_string(j, "method");
    } else {
        throw parse_error("unknown event kind '" + kind + "'");
    }
    return e;
}

std::string event_to_json_line(const event& e) {
    json j;
    j["seq"] = e.seq;
    j["thread"] = e.thread;
    switch (e.kind) {
        case event_kind::field_write:
            j["kind"] = "fieldWrite";
            j["class"] = e.klass;
            if (e.instance) j["instance"] = *e.instance;
            j["field"] = e.field;
            j["value"] = e.val ? e.val->to_json() : value().to_json();
            break;
        case event_kind::method_entry:
            j["kind"] = "methodEntry";
            j["method"] = e.method;
            break;
        case event_kind::method_exit:
            j["kind"] = "methodExit";
            j["method"] = e.method;
            break;
    }
    return j.dump();
}

}  // namespace fsmrv
