// SPDX-License-Identifier: Apache-2.0
//
// Event-to-write pipeline: filters raw events, matches key attributes,
// synthesizes control and derived attributes, and emits attr_writes against
// a fixed model attribute vector.

#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fsmrv/event.hpp"
#include "fsmrv/keyattr.hpp"
#include "fsmrv/model.hpp"

namespace fsmrv {

// Everything needed to turn a trace into writes over one attribute vector.
// Built by the spec-file loader (or directly by tests/generators).
struct model_schema {
    key_attribute_set keys;
    inclusion_filter filter;

    std::string control_name;  // empty = no control attribute declared
    control_level control = control_level::method;

    std::vector<derivation_rule> derives;  // applied in declaration order

    // The model's attribute vector: declared keys (declaration order, minus
    // keys that exist only to feed derivations), then control, then derive
    // outputs. Parallel tags.
    std::vector<std::string> attrs;
    std::vector<value_tag> tags;

    std::optional<size_t> attr_index(const std::string& name) const;
};

class pipeline {
  public:
    explicit pipeline(model_schema schema);

    const model_schema& schema() const { return schema_; }

    // Appends this event's writes (possibly none) to out, in order: the
    // matched key write, then derived writes in rule order — all sharing the
    // event's seq. Throws trace_error on a key-tag mismatch.
    void feed(const event& e, std::vector<attr_write>& out);

  private:
    model_schema schema_;
    std::unordered_map<std::string, size_t> index_;        // vector attr -> idx
    std::unordered_map<std::string, value> input_latest_;  // key name -> latest value
};

}  // namespace fsmrv
