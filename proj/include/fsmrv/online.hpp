// SPDX-License-Identifier: Apache-2.0
//
// Streaming (online) checking: a session ingests trace records one at a
// time, maintains the abstract graph model and path models incrementally,
// and emits notifications the moment a property is violated — before the
// next record is ingested. decide_validity runs only when a previously
// unseen abstract state is created, so its invocation count tracks distinct
// states, not events.
//
// Per-declaration routing (after Table-1 normalization, per form):
//   - P[...] covered by a `path` declaration  -> incremental f1->f3 edge watch
//   - unprimed temporal-free G[...] body      -> abstract route (decide_validity
//     per new state) when the body is abstractly checkable, else direct
//     concrete evaluation when every referenced attribute is identity-mapped
//   - unprimed temporal-free F[...] body      -> resolves to True the first
//     time a state satisfies it; otherwise stays pending
//   - everything else (primed variables, nested temporals, uncovered P)
//     stays pending: those need the completed trace, and the offline checker.
//
// finalize() turns never-violated G routes into True (False/Incompatible
// stick), path-covered P into True/False, and unresolved F / unsupported
// forms into Pending verdicts.
//
// The wire protocol is JSONL in both directions: events in, notification
// records out ({"type":"violation"|"incompatible"|"error"|"terminate"}),
// then one {"type":"report", ...} record at end of stream.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsmrv/checker.hpp"
#include "fsmrv/event.hpp"
#include "fsmrv/model.hpp"
#include "fsmrv/pipeline.hpp"
#include "fsmrv/specfile.hpp"

namespace fsmrv {

enum class notification_kind { violation, incompatible, error, terminate };

struct notification {
    notification_kind kind = notification_kind::error;
    std::string property;  // declaration name; empty for error/terminate
    uint64_t seq = 0;      // offending seq; 0 when not applicable
    std::string state;     // labeled state key or transition text
    std::string detail;

    nlohmann::json to_json() const;
    std::string to_json_line() const;  // one JSONL record, no trailing newline
};

struct online_options {
    bool terminate_on_violation = false;
    bool strict_undefined = false;
};

struct online_stats {
    uint64_t events = 0;           // records offered, including rejected ones
    uint64_t writes = 0;           // attribute writes applied to the model
    uint64_t states_created = 0;   // distinct graph states interned
    uint64_t validity_checks = 0;  // decide_validity invocations
};

nlohmann::json verdict_to_json(const verdict& v);

struct online_report {
    std::vector<verdict> verdicts;  // one per prop declaration, in order

    bool any(verdict_kind k) const;
    int exit_code() const;  // 0 all True/Pending, 1 any False, 2 any Incompatible
    nlohmann::json to_json() const;
    std::string to_json_line() const;  // {"type":"report", ...}
};

class session {
  public:
    explicit session(spec_config cfg, online_options opt = {});

    // Feed one raw JSONL record (without trailing newline). Malformed input
    // yields an error notification; the session keeps going.
    std::vector<notification> ingest_line(const std::string& line);

    // Feed one parsed event. Out-of-order sequence numbers and trace-level
    // type errors yield error notifications; the session keeps going.
    std::vector<notification> ingest(const event& e);

    // Resolves every declaration to a final verdict. Idempotent; the model
    // remains available for export afterwards.
    const online_report& finalize();

    const model& graph() const { return builder_.peek(); }
    const model& path_graph(size_t path_idx) const { return path_builders_[path_idx].peek(); }
    const spec_config& config() const { return cfg_; }
    const online_stats& stats() const { return stats_; }
    bool violated() const { return violated_; }
    bool finalized() const { return finalized_; }

  private:
    enum class route_t { path_edge, g_decide, g_direct, f_decide, f_direct, unsupported };

    struct unit {
        size_t decl = 0;    // index into cfg_.props
        expr_ptr form;      // the normalized form
        expr_ptr body;      // G/F body (decide/direct routes)
        route_t route = route_t::unsupported;
        std::string pending_why;
        std::vector<size_t> referenced;  // attr indices the body mentions
        int path_idx = -1;               // path_edge: index into cfg_.paths

        bool violated = false;
        bool incompat = false;
        bool resolved_true = false;  // F routes
        bool eval_error_notified = false;
        uint64_t checked = 0;
        std::optional<witness> wit;  // violation or incompatibility witness
    };

    void classify(size_t decl_idx, const expr_ptr& form);
    void check_new_state(const state_vector& sv, uint64_t seq, std::vector<notification>& out);
    void apply_write(const attr_write& w, std::vector<notification>& out);
    void mark_violated(unit& u, const witness& w, std::vector<notification>& out);
    void mark_incompat(unit& u, const witness& w, std::vector<notification>& out);

    spec_config cfg_;
    online_options opt_;
    pipeline pipe_;
    graph_builder builder_;
    std::vector<path_builder> path_builders_;  // parallel to cfg_.paths
    std::vector<size_t> path_attr_;            // attr index per path decl
    std::vector<unit> units_;

    online_stats stats_;
    uint64_t last_seq_ = 0;
    bool violated_ = false;
    bool terminate_sent_ = false;
    bool finalized_ = false;
    online_report report_;
};

// --- TCP server -----------------------------------------------------------
//
// Runs one monitoring session over a TCP socket: accepts a single client,
// streams notification records back as JSONL, refuses a second concurrent
// connection with an error record, and on end-of-stream finalizes the
// session, writes the report record, and returns. Single-threaded (poll).

struct serve_options {
    std::string host = "127.0.0.1";  // IPv4 literal or "localhost"
    uint16_t port = 0;               // 0 = ephemeral
    online_options session;
    std::string dump_model_path;             // write the model JSON here at end
    std::function<void(uint16_t)> on_ready;  // called with the bound port
};

// Returns the report's exit code (0/1/2), or 4 on socket-level failure.
// Throws config_error for an unusable host string.
int serve(const spec_config& cfg, const serve_options& opt);

}  // namespace fsmrv
