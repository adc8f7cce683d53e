// SPDX-License-Identifier: Apache-2.0
//
// Finite state models extracted from key-attribute write streams.
//
//   LSM  — linear state model: one state per write plus the initial
//          all-Undefined state. Stored as the initial state plus per-write
//          deltas (attribute index, new value, seq); full vectors are
//          materialized on demand, so large traces stay cheap.
//   DSM  — distinct state model: LSM with duplicate vectors merged; edges
//          carry transition counts.
//   ASM  — abstract state model: DSM over abstracted components.
//   PATH — path-abstraction model: start node plus one node per slot of a
//          path_spec, built from the retained subsequence of a single
//          control attribute.
//
// Graph-model state 0 is always the start state (all Undefined/Unknown).

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fsmrv/abstraction.hpp"
#include "fsmrv/value.hpp"

namespace fsmrv {

enum class model_kind { lsm, dsm, asm_, path };

std::string model_kind_name(model_kind k);
model_kind model_kind_from_name(const std::string& s);

// One key-attribute write after trace normalization: input to all builders.
struct attr_write {
    size_t attr = 0;  // index into the model's attribute list
    value val;
    uint64_t seq = 0;
};

struct model {
    model_kind kind = model_kind::lsm;
    std::vector<std::string> attrs;
    std::vector<value_tag> tags;
    std::vector<abstraction_fn> fns;  // identity for concrete models

    // LSM storage: deltas against the all-Undefined initial state.
    struct step {
        size_t attr;
        component val;
        uint64_t seq;
    };
    std::vector<step> steps;

    // Graph storage (DSM/ASM/PATH).
    std::vector<state_vector> states;       // [0] = start
    std::vector<uint64_t> first_seq;        // per state; 0 for the start state
    struct edge_info {
        uint64_t count = 0;
        uint64_t first_seq = 0;
    };
    std::map<std::pair<uint32_t, uint32_t>, edge_info> edges;

    // PATH extras: which graph state realizes each slot (-1 = never seen).
    std::optional<path_spec> path;
    std::array<int, 3> slot_state{-1, -1, -1};

    size_t state_count() const {
        return kind == model_kind::lsm ? steps.size() + 1 : states.size();
    }

    // Canonical state key "a=1,b=?" used in dumps, DOT, and witnesses.
    std::string state_key(const state_vector& s) const;

    // Like state_key but renders abstract components through their
    // abstraction function's label, e.g. "p1=E,p2=~E" or "alt=[324:362)".
    std::string labeled_key(const state_vector& s) const;

    // Materializes LSM state i (0 = initial). O(i); prefer walk() for sweeps.
    state_vector lsm_state(size_t i) const;

    // Calls visit(i, state) for every LSM state in order, reusing one vector.
    void walk(const std::function<void(size_t, const state_vector&)>& visit) const;
};

// Incremental graph-model builder shared by DSM/ASM construction, online
// checking, and (with a path_spec) path models.
class graph_builder {
  public:
    // fns must be parallel to attrs; identity functions give a DSM.
    graph_builder(model_kind kind, std::vector<std::string> attrs, std::vector<value_tag> tags,
                  std::vector<abstraction_fn> fns);

    struct outcome {
        bool new_state = false;
        bool new_edge = false;
        uint32_t state = 0;  // target state id of this write's transition
    };
    outcome add(const attr_write& w);

    const model& peek() const { return m_; }
    model finish() &&;

  private:
    uint32_t intern(const state_vector& s, uint64_t seq);

    model m_;
    state_vector cur_;
    uint32_t cur_id_ = 0;
    std::unordered_map<size_t, std::vector<uint32_t>> index_;  // hash -> state ids
};

// Path-model builder: consumes writes of the control attribute and keeps
// only those matching a slot (Algorithm: retained subsequence).
class path_builder {
  public:
    explicit path_builder(path_spec spec);

    struct outcome {
        bool retained = false;
        bool new_edge = false;
        int from_slot = -1, to_slot = -1;  // set when retained
    };
    outcome add(const value& v, uint64_t seq);

    const model& peek() const { return m_; }
    model finish() &&;

  private:
    model m_;
    int prev_slot_ = -1;     // -1 = still at the start node
    uint32_t prev_state_ = 0;
    uint32_t slot_ids_[3] = {0, 0, 0};  // 0 = not yet created
};

// Convenience one-shot constructors.
model build_lsm(std::vector<std::string> attrs, std::vector<value_tag> tags,
                const std::vector<attr_write>& writes);
model build_dsm(std::vector<std::string> attrs, std::vector<value_tag> tags,
                const std::vector<attr_write>& writes);
model build_asm(std::vector<std::string> attrs, std::vector<value_tag> tags,
                std::vector<abstraction_fn> fns, const std::vector<attr_write>& writes);
model build_path_model(path_spec spec, const std::vector<attr_write>& writes, size_t attr_idx);

// Collapses an LSM into its DSM (used by tests and the model invariants).
model collapse_lsm(const model& lsm);

}  // namespace fsmrv
