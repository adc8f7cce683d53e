// SPDX-License-Identifier: Apache-2.0
//
// Property evaluation on all model kinds.
//
//   LSM   — G / F / P and boolean combinations, nested temporals, primed
//           variables against the unique successor.
//   DSM   — a single G whose body is temporal-free; primed variables
//           quantify over the state's successors (whole-body, per
//           successor: all T -> T, some F and never T -> F, conflict -> U).
//   ASM   — a single G with an abstractly checkable body, decided per
//           abstract state from the characteristic constraints (exact:
//           T iff every concretization satisfies the body, F iff none does,
//           U otherwise).
//   PATH  — P properties; violation iff an f1-node -> f3-node edge exists.
//
// Verdict semantics shared by all kinds: the initial all-Undefined state is
// never evaluated; states whose body evaluates to U (Undefined reference,
// missing successor, or successor conflict) are skipped — unless
// strict_undefined is set, in which case a skip is a False. A G whose
// every state was skipped is True with detail "vacuous".

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsmrv/constraint.hpp"
#include "fsmrv/model.hpp"
#include "fsmrv/prop/ast.hpp"

namespace fsmrv {

// Three-valued (Kleene) truth.
enum class tv : int8_t { f = 0, u = 1, t = 2 };

inline tv tv_not(tv a) { return static_cast<tv>(2 - static_cast<int>(a)); }
inline tv tv_and(tv a, tv b) { return a < b ? a : b; }
inline tv tv_or(tv a, tv b) { return a > b ? a : b; }
inline tv tv_implies(tv a, tv b) { return tv_or(tv_not(a), b); }
char tv_letter(tv a);  // 'F' 'U' 'T'

enum class verdict_kind { true_, false_, incompatible, pending };
std::string verdict_kind_name(verdict_kind k);

struct witness {
    uint64_t seq = 0;
    std::string state;   // canonical key of the offending state
    std::string detail;  // failing sub-property or reason
};

struct verdict {
    std::string property;  // canonical text (filled by callers that track it)
    verdict_kind kind = verdict_kind::true_;
    std::optional<witness> wit;  // always present for False
    bool vacuous = false;        // G that never checked a state
    std::string detail;
};

struct check_options {
    bool strict_undefined = false;
};

struct check_stats {
    uint64_t validity_checks = 0;  // decide_validity invocations
    uint64_t states_checked = 0;
    uint64_t states_skipped = 0;
};

// Dispatches on m.kind. Throws config_error when the property cannot run on
// this model kind, eval_error on runtime evaluation failures.
verdict check_model(const model& m, const expr_ptr& p, const check_options& opt = {},
                    check_stats* stats = nullptr);

verdict check_lsm(const model& m, const expr_ptr& p, const check_options& opt = {},
                  check_stats* stats = nullptr);
verdict check_dsm(const model& m, const expr_ptr& p, const check_options& opt = {},
                  check_stats* stats = nullptr);
verdict check_asm(const model& m, const expr_ptr& p, const check_options& opt = {},
                  check_stats* stats = nullptr);
verdict check_path(const model& m, const expr_ptr& p);

// Validity of body q over one abstract state described by per-attribute
// constraints (parallel to attrs/tags). Exact up to a region-product budget
// of 2^20 combinations, beyond which a sound per-atom Kleene approximation
// is used (may report U where the exact answer is T or F, never the
// reverse). Throws config_error when q is not abstractly checkable.
tv decide_validity(const expr_ptr& q, const std::vector<std::string>& attrs,
                   const std::vector<value_tag>& tags, const std::vector<constraint>& cs);

// Structural gate for the abstract route: atoms must be unprimed
// single-variable comparisons with constants (plus bare boolean attributes
// and boolean literals) under !, &&, ||, -> only. Throws config_error
// ("not abstractly checkable") otherwise.
void require_abstractly_checkable(const expr_ptr& q, const std::vector<std::string>& attrs,
                                  const std::vector<value_tag>& tags);

// True when p is a single G whose body is free of nested temporals (the
// only shape the DSM/ASM routes accept).
bool is_plain_g(const expr_ptr& p);

// Evaluates a temporal-free, unprimed predicate over one concrete state
// vector under Kleene semantics (undefined components yield U). Used by the
// streaming checker's direct route. Throws eval_error on type errors and
// model_error if the predicate touches an abstract component.
tv eval_state_pred(const expr_ptr& q, const std::vector<std::string>& attrs,
                   const state_vector& s, uint64_t seq);

// Combines per-conjunct verdicts into one declaration verdict: False
// dominates (earliest witness wins), then Incompatible (first encountered),
// then True; the result is vacuous only when every part was. Each part's
// property field should hold its conjunct's text (as check_model leaves it);
// the combined verdict's property field is set to `name`.
verdict combine_conjunct_verdicts(const std::string& name, const std::vector<verdict>& parts);

// Checks every normalized form of one declaration on one model and combines
// the results with combine_conjunct_verdicts.
verdict check_normalized(const model& m, const std::string& name,
                         const std::vector<expr_ptr>& forms, const check_options& opt = {},
                         check_stats* stats = nullptr);

}  // namespace fsmrv
