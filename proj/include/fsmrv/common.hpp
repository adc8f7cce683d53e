// SPDX-License-Identifier: Apache-2.0
//
// Error types and the FSMRV_LOG-driven logger shared by all modules.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fsmrv {

// Malformed input text (trace records, spec files, property expressions).
// `line` is 1-based when known, 0 otherwise.
struct parse_error : std::runtime_error {
    int line = 0;
    explicit parse_error(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

// Well-formed input that violates a semantic rule of the trace stream
// (out-of-order seq, type mismatch against a key attribute, ...).
struct trace_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration: invalid key/abs/path declarations, a property asked to
// run on a model kind that cannot support it, and similar rejections.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runtime evaluation failure inside the checker (division by zero, type
// mismatch in an atom). Carries the seq of the state being evaluated when
// one is available.
struct eval_error : std::runtime_error {
    uint64_t seq = 0;
    explicit eval_error(const std::string& msg, uint64_t at_seq = 0)
        : std::runtime_error(at_seq ? msg + " (at seq " + std::to_string(at_seq) + ")" : msg),
          seq(at_seq) {}
};

// Internal model invariant violation (malformed dump, mismatched abstraction).
struct model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class log_level { off = 0, info = 1, debug = 2 };

// Level comes from FSMRV_LOG in {off,info,debug}; unset or unknown = off.
log_level current_log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace fsmrv
