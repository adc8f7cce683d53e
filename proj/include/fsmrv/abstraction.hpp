// SPDX-License-Identifier: Apache-2.0
//
// Attribute abstraction functions and their characteristic (concretization)
// sets, plus path-abstraction specifications.
//
//   identity  : v -> v                      characteristic: {v}
//   bool_pred : v -> pred(v) in {T, F}      characteristic: solution set / complement
//   range     : v -> bucket index           characteristic: the bucket's interval
//                (cutpoints c1..cn give n+1 buckets: v < c1 -> 0,
//                 ci <= v < ci+1 -> i, v >= cn -> n)
//
// Undefined always abstracts to Unknown, whose characteristic set is the
// full domain.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "fsmrv/constraint.hpp"
#include "fsmrv/prop/ast.hpp"
#include "fsmrv/value.hpp"

namespace fsmrv {

struct abstraction_fn {
    enum class kind_t { identity, bool_pred, range };

    kind_t kind = kind_t::identity;
    std::string attr;            // the attribute this function abstracts
    value_tag tag = value_tag::vt_int;

    // bool_pred: a boolean combination (&&, ||, !) of comparisons of `attr`
    // against constants, e.g.  p == "E"  or  w == 0 || w == 1.
    expr_ptr pred;
    std::string pred_text;       // canonical text, kept for display/round-trip

    // range: strictly increasing cutpoints.
    std::vector<double> cutpoints;

    static abstraction_fn identity(std::string attr, value_tag tag);
    static abstraction_fn bool_pred(std::string attr, value_tag tag, expr_ptr pred);
    static abstraction_fn range(std::string attr, value_tag tag, std::vector<double> cuts);

    bool is_identity() const { return kind == kind_t::identity; }

    // Human-readable label for an abstract component under this function,
    // e.g. E / ~E for bool(p == "E"), "<324" / "[324:362)" for ranges.
    std::string label(const component& c) const;

    nlohmann::json to_json() const;
    static abstraction_fn from_json(const nlohmann::json& j, std::string attr, value_tag tag);
};

// Evaluates a single-attribute predicate on a concrete value.
// Throws eval_error on type mismatch.
bool eval_pred_on_value(const expr_ptr& pred, const std::string& attr, const value& v);

// The predicate's solution set over the attribute's domain.
constraint pred_solution_set(const expr_ptr& pred, const std::string& attr, value_tag tag);

// Abstracts one component. Undefined -> Unknown; otherwise applies fn.
// Throws model_error when the value's tag cannot feed the function.
component apply_abstraction(const abstraction_fn& fn, const component& concrete);

// Exact concretization set of an abstract component under fn.
constraint characteristic(const abstraction_fn& fn, const component& abstract);

// Validates the declaration (tag compatibility, increasing cutpoints,
// predicate shape). Throws config_error.
void validate_abstraction(const abstraction_fn& fn);

// Path abstraction: three pairwise-disjoint slots, each a disjunction of
// equality atoms `attr == constant`.
struct path_spec {
    std::string name;
    std::string attr;
    value_tag tag = value_tag::vt_str;
    std::array<std::vector<value>, 3> slot_consts;
    std::array<std::string, 3> slot_text;

    // -1 when the value matches no slot; throws model_error if it matches
    // two (cannot happen for specs built by the validating parser).
    int slot_of(const value& v) const;

    // Builds from three parsed slot expressions; validates shape and
    // disjointness. Throws config_error.
    static path_spec from_exprs(std::string name, std::string attr, value_tag tag,
                                const std::array<expr_ptr, 3>& slots);
};

}  // namespace fsmrv
