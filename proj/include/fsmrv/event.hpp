// SPDX-License-Identifier: Apache-2.0
//
// Execution-event records: the UTF-8 JSON-lines trace encoding shared by
// trace files and live streams.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fsmrv/value.hpp"

namespace fsmrv {

enum class event_kind { field_write, method_entry, method_exit };

struct event {
    uint64_t seq = 0;
    event_kind kind = event_kind::field_write;
    std::string thread;

    // field_write payload
    std::string klass;                // qualified class name, e.g. "phil.Philo"
    std::optional<int64_t> instance;  // absent for static fields
    std::string field;
    std::optional<value> val;

    // method_entry / method_exit payload: qualified "pkg.Class.method"
    std::string method;
};

// Parses one JSONL record. Throws parse_error (no line number; the caller
// that knows the line attaches it) on malformed JSON, unknown kind, missing
// fields, tag/payload mismatch, or seq < 1.
event parse_event(const std::string& line);

std::string event_to_json_line(const event& e);

}  // namespace fsmrv
