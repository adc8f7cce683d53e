// SPDX-License-Identifier: Apache-2.0
//
// Equivalence-preserving property normalization. Applies, to a fixpoint,
// only rewrites that preserve verdicts on every trace:
//
//   p && q                  =>  p, q          (top-level conjunction split)
//   G[p && q]               =>  G[p], G[q]
//   G[p -> (q && r)]        =>  G[p -> q], G[p -> r]
//   P[(a || b) ~~> f ~~> g] =>  P[a ~~> f ~~> g], P[b ~~> f ~~> g]
//   P[a ~~> f ~~> (g || h)] =>  P[a ~~> f ~~> g], P[a ~~> f ~~> h]
//
// Disjunction under G and disjunction in P's middle slot are NOT split:
// G[p || q] is weaker than G[p] || G[q], and P with a disjunctive middle
// slot cannot be decomposed (regression-tested counterexamples).
//
// The result list's conjunction is equivalent to the input property.

#pragma once

#include <vector>

#include "fsmrv/prop/ast.hpp"

namespace fsmrv {

std::vector<expr_ptr> normalize(const expr_ptr& p);

}  // namespace fsmrv
