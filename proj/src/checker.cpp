// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "fsmrv/abstraction.hpp"
#include "fsmrv/common.hpp"

namespace fsmrv {

char tv_letter(tv a) { return a == tv::t ? 'T' : a == tv::f ? 'F' : 'U'; }

std::string verdict_kind_name(verdict_kind k) {
    switch (k) {
        case verdict_kind::true_: return "True";
        case verdict_kind::false_: return "False";
        case verdict_kind::incompatible: return "Incompatible";
        case verdict_kind::pending: return "Pending";
    }
    return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Concrete evaluation (LSM/DSM states with identity components).

struct eval_env {
    const std::vector<std::string>* attrs = nullptr;
    const std::unordered_map<std::string, size_t>* idx = nullptr;
    const state_vector* cur = nullptr;
    const state_vector* next = nullptr;  // primed target; null = no successor
    std::map<std::string, value>* bindings = nullptr;
    uint64_t seq = 0;

    // Nested temporal support (linear models only).
    const std::vector<state_vector>* timeline = nullptr;
    const std::vector<uint64_t>* timeline_seq = nullptr;
    size_t pos = 0;
};

// A list expression's value: materialized elements or an unexpanded range.
struct list_view {
    bool is_range = false;
    int64_t lo = 0, hi = 0;  // [lo, hi)
    int_list elems;

    uint64_t size() const {
        if (!is_range) return elems.size();
        return hi > lo ? static_cast<uint64_t>(hi - lo) : 0;
    }
    int64_t at(uint64_t i) const { return is_range ? lo + static_cast<int64_t>(i) : elems[i]; }
    bool contains_num(double x) const {
        if (is_range) return x >= double(lo) && x < double(hi) && std::floor(x) == x;
        for (int64_t e : elems)
            if (double(e) == x) return true;
        return false;
    }
};

std::optional<value> eval_val(const expr_ptr& e, eval_env& env);
tv eval_bool(const expr_ptr& e, eval_env& env);

const component* lookup_component(const std::string& name, bool primed, eval_env& env) {
    auto it = env.idx->find(name);
    if (it == env.idx->end()) throw eval_error("unknown attribute '" + name + "'", env.seq);
    const state_vector* sv = primed ? env.next : env.cur;
    if (!sv) return nullptr;  // primed reference with no successor
    return &(*sv)[it->second];
}

std::optional<value> eval_var(const expr& e, eval_env& env) {
    if (!e.primed && env.bindings) {
        auto b = env.bindings->find(e.name);
        if (b != env.bindings->end()) return b->second;
    }
    const component* c = lookup_component(e.name, e.primed, env);
    if (!c || c->is_undefined()) return std::nullopt;
    if (!c->is_value())
        throw model_error("concrete evaluation over abstract component of '" + e.name + "'");
    return c->as_value();
}

std::optional<list_view> eval_list(const expr_ptr& e, eval_env& env) {
    switch (e->kind) {
        case expr::kind_t::list_lit: {
            list_view lv;
            for (const auto& el : e->elems) {
                auto v = eval_val(el, env);
                if (!v) return std::nullopt;
                if (v->tag() != value_tag::vt_int)
                    throw eval_error("list elements must be integers", env.seq);
                lv.elems.push_back(v->as_int());
            }
            return lv;
        }
        case expr::kind_t::range: {
            auto lo = eval_val(e->a, env), hi = eval_val(e->b, env);
            if (!lo || !hi) return std::nullopt;
            if (lo->tag() != value_tag::vt_int || hi->tag() != value_tag::vt_int)
                throw eval_error("range bounds must be integers", env.seq);
            list_view lv;
            lv.is_range = true;
            lv.lo = lo->as_int();
            lv.hi = hi->as_int();
            return lv;
        }
        case expr::kind_t::var: {
            auto v = eval_var(*e, env);
            if (!v) return std::nullopt;
            if (v->tag() != value_tag::vt_int_list)
                throw eval_error("'" + e->name + "' is not a list", env.seq);
            list_view lv;
            lv.elems = v->as_list();
            return lv;
        }
        default:
            throw eval_error("expected a list expression", env.seq);
    }
}

std::optional<value> eval_arith(const expr& e, eval_env& env) {
    auto a = eval_val(e.a, env), b = eval_val(e.b, env);
    if (!a || !b) return std::nullopt;
    if (!a->is_numeric() || !b->is_numeric())
        throw eval_error("arithmetic needs numeric operands", env.seq);
    bool both_int = a->tag() == value_tag::vt_int && b->tag() == value_tag::vt_int;
    if (both_int) {
        int64_t x = a->as_int(), y = b->as_int();
        switch (e.op) {
            case bin_op::add: return value{x + y};
            case bin_op::sub: return value{x - y};
            case bin_op::mul: return value{x * y};
            case bin_op::div_:
                if (y == 0) throw eval_error("division by zero", env.seq);
                return value{x / y};
            default: break;
        }
    } else {
        double x = a->num(), y = b->num();
        switch (e.op) {
            case bin_op::add: return value{x + y};
            case bin_op::sub: return value{x - y};
            case bin_op::mul: return value{x * y};
            case bin_op::div_:
                if (y == 0.0) throw eval_error("division by zero", env.seq);
                return value{x / y};
            default: break;
        }
    }
    throw model_error("eval_arith: non-arithmetic operator");
}

tv rel_compare(const expr& e, eval_env& env) {
    if (e.op == bin_op::in) {
        auto x = eval_val(e.a, env);
        auto lst = eval_list(e.b, env);
        if (!x || !lst) return tv::u;
        if (!x->is_numeric()) throw eval_error("'in' needs a numeric left operand", env.seq);
        return lst->contains_num(x->num()) ? tv::t : tv::f;
    }
    auto a = eval_val(e.a, env), b = eval_val(e.b, env);
    if (!a || !b) return tv::u;
    bool numeric = a->is_numeric() && b->is_numeric();
    if (e.op == bin_op::eq || e.op == bin_op::ne) {
        bool eq;
        if (numeric) {
            eq = a->num() == b->num();
        } else if (a->tag() == b->tag()) {
            eq = *a == *b;
        } else {
            throw eval_error("type mismatch in comparison", env.seq);
        }
        return (eq == (e.op == bin_op::eq)) ? tv::t : tv::f;
    }
    if (!numeric)
        throw eval_error("ordered comparison needs numeric operands", env.seq);
    double x = a->num(), y = b->num();
    bool r = false;
    switch (e.op) {
        case bin_op::lt: r = x < y; break;
        case bin_op::le: r = x <= y; break;
        case bin_op::gt: r = x > y; break;
        case bin_op::ge: r = x >= y; break;
        default: throw model_error("rel_compare: non-relational operator");
    }
    return r ? tv::t : tv::f;
}

tv eval_quant(const expr& e, eval_env& env) {
    auto lst = eval_list(e.a, env);
    if (!lst) return tv::u;
    if (lst->size() > (1ull << 22))
        throw eval_error("iteration range too large", env.seq);
    std::map<std::string, value> local;
    if (!env.bindings) env.bindings = &local;
    auto* binds = env.bindings;
    auto saved = binds->find(e.name) != binds->end()
                     ? std::optional<value>{(*binds)[e.name]}
                     : std::nullopt;
    tv acc = e.is_all ? tv::t : tv::f;
    for (uint64_t i = 0; i < lst->size(); ++i) {
        (*binds)[e.name] = value{lst->at(i)};
        tv r = eval_bool(e.b, env);
        acc = e.is_all ? tv_and(acc, r) : tv_or(acc, r);
    }
    if (saved)
        (*binds)[e.name] = *saved;
    else
        binds->erase(e.name);
    if (env.bindings == &local) env.bindings = nullptr;
    return acc;
}

// Nested F/G anchored at env.pos over the remaining timeline (never invoked
// for position 0: top-level checking starts at state 1).
tv eval_anchored(const expr& e, eval_env& env) {
    if (!env.timeline)
        throw config_error("nested temporal operators require the linear model (requires LSM)");
    const auto& tl = *env.timeline;
    bool any_t = false, any_u = false, any_f = false;
    for (size_t j = env.pos; j < tl.size(); ++j) {
        eval_env inner = env;
        inner.cur = &tl[j];
        inner.next = j + 1 < tl.size() ? &tl[j + 1] : nullptr;
        inner.pos = j;
        inner.seq = (*env.timeline_seq)[j];
        tv r = eval_bool(e.a, inner);
        if (r == tv::t) any_t = true;
        if (r == tv::u) any_u = true;
        if (r == tv::f) any_f = true;
        if (e.kind == expr::kind_t::temp_f && any_t) return tv::t;
        if (e.kind == expr::kind_t::temp_g && any_f) return tv::f;
    }
    if (e.kind == expr::kind_t::temp_f) return any_u ? tv::u : tv::f;
    return any_u ? tv::u : tv::t;
}

tv eval_bool(const expr_ptr& e, eval_env& env) {
    switch (e->kind) {
        case expr::kind_t::lit:
            if (e->lit_val.tag() != value_tag::vt_bool)
                throw eval_error("expected a boolean expression", env.seq);
            return e->lit_val.as_bool() ? tv::t : tv::f;
        case expr::kind_t::var: {
            auto v = eval_var(*e, env);
            if (!v) return tv::u;
            if (v->tag() != value_tag::vt_bool)
                throw eval_error("attribute '" + e->name + "' is not boolean", env.seq);
            return v->as_bool() ? tv::t : tv::f;
        }
        case expr::kind_t::not_:
            return tv_not(eval_bool(e->a, env));
        case expr::kind_t::bin:
            switch (e->op) {
                case bin_op::and_: return tv_and(eval_bool(e->a, env), eval_bool(e->b, env));
                case bin_op::or_: return tv_or(eval_bool(e->a, env), eval_bool(e->b, env));
                case bin_op::implies:
                    return tv_implies(eval_bool(e->a, env), eval_bool(e->b, env));
                case bin_op::add: case bin_op::sub: case bin_op::mul: case bin_op::div_:
                    throw eval_error("expected a boolean expression", env.seq);
                default: return rel_compare(*e, env);
            }
        case expr::kind_t::quant:
            return eval_quant(*e, env);
        case expr::kind_t::temp_f:
        case expr::kind_t::temp_g:
            return eval_anchored(*e, env);
        case expr::kind_t::temp_p:
            throw config_error("P properties cannot be nested inside expressions");
        default:
            throw eval_error("expected a boolean expression", env.seq);
    }
}

std::optional<value> eval_val(const expr_ptr& e, eval_env& env) {
    switch (e->kind) {
        case expr::kind_t::lit:
            return e->lit_val;
        case expr::kind_t::var:
            return eval_var(*e, env);
        case expr::kind_t::bin:
            if (e->op == bin_op::add || e->op == bin_op::sub || e->op == bin_op::mul ||
                e->op == bin_op::div_)
                return eval_arith(*e, env);
            [[fallthrough]];
        case expr::kind_t::not_:
        case expr::kind_t::quant:
        case expr::kind_t::temp_f:
        case expr::kind_t::temp_g: {
            tv r = eval_bool(e, env);
            if (r == tv::u) return std::nullopt;
            return value{r == tv::t};
        }
        case expr::kind_t::list_lit: {
            auto lv = eval_list(e, env);
            if (!lv) return std::nullopt;
            return value{lv->elems};
        }
        case expr::kind_t::list_of: {
            auto lv = eval_list(e->a, env);
            if (!lv) return std::nullopt;
            switch (e->lop) {
                case list_op::size:
                    return value{static_cast<int64_t>(lv->size())};
                case list_op::min: {
                    if (lv->size() == 0) return value{std::numeric_limits<double>::infinity()};
                    if (lv->is_range) return value{lv->lo};
                    return value{*std::min_element(lv->elems.begin(), lv->elems.end())};
                }
                case list_op::max: {
                    if (lv->size() == 0) return value{-std::numeric_limits<double>::infinity()};
                    if (lv->is_range) return value{lv->hi - 1};
                    return value{*std::max_element(lv->elems.begin(), lv->elems.end())};
                }
            }
            throw model_error("eval_val: bad list op");
        }
        case expr::kind_t::range:
            throw eval_error("a range is not a scalar value", env.seq);
        case expr::kind_t::temp_p:
            throw config_error("P properties cannot be nested inside expressions");
    }
    throw model_error("eval_val: unhandled node kind");
}

// ---------------------------------------------------------------------------
// Abstract validity: atoms and the region-product decision procedure.

struct atom_info {
    const expr* node = nullptr;
    size_t attr = 0;
    std::string op;  // "==", "!=", "<", "<=", ">", ">="
    value rhs;
};

const char* rel_op_text(bin_op op) {
    switch (op) {
        case bin_op::eq: return "==";
        case bin_op::ne: return "!=";
        case bin_op::lt: return "<";
        case bin_op::le: return "<=";
        case bin_op::gt: return ">";
        case bin_op::ge: return ">=";
        default: return nullptr;
    }
}

const char* flip_rel(const std::string& op) {
    if (op == "<") return ">";
    if (op == "<=") return ">=";
    if (op == ">") return "<";
    if (op == ">=") return "<=";
    return op == "==" ? "==" : "!=";
}

void reject_abstract(const std::string& why) {
    throw config_error("not abstractly checkable: " + why);
}

// Walks q collecting atoms; throws config_error on any non-conforming shape.
void collect_atoms(const expr_ptr& e, const std::vector<std::string>& attrs,
                   const std::vector<value_tag>& tags, std::vector<atom_info>& out) {
    auto attr_of = [&](const std::string& name) -> size_t {
        for (size_t i = 0; i < attrs.size(); ++i)
            if (attrs[i] == name) return i;
        throw config_error("property references unknown attribute '" + name + "'");
    };
    switch (e->kind) {
        case expr::kind_t::lit:
            if (e->lit_val.tag() != value_tag::vt_bool)
                reject_abstract("non-boolean literal");
            return;  // constant truth; no atom
        case expr::kind_t::var: {
            if (e->primed) reject_abstract("primed variable '" + e->name + "'");
            size_t ai = attr_of(e->name);
            if (tags[ai] != value_tag::vt_bool)
                reject_abstract("bare non-boolean attribute '" + e->name + "'");
            out.push_back({e.get(), ai, "==", value{true}});
            return;
        }
        case expr::kind_t::not_:
            collect_atoms(e->a, attrs, tags, out);
            return;
        case expr::kind_t::bin: {
            if (e->op == bin_op::and_ || e->op == bin_op::or_ || e->op == bin_op::implies) {
                collect_atoms(e->a, attrs, tags, out);
                collect_atoms(e->b, attrs, tags, out);
                return;
            }
            const char* op = rel_op_text(e->op);
            if (!op) reject_abstract("operator not allowed in abstract bodies");
            const expr* var_side = nullptr;
            const expr* lit_side = nullptr;
            bool flipped = false;
            if (e->a->kind == expr::kind_t::var && e->b->kind == expr::kind_t::lit) {
                var_side = e->a.get();
                lit_side = e->b.get();
            } else if (e->b->kind == expr::kind_t::var && e->a->kind == expr::kind_t::lit) {
                var_side = e->b.get();
                lit_side = e->a.get();
                flipped = true;
            } else {
                reject_abstract("atoms must compare one attribute with one constant");
            }
            if (var_side->primed) reject_abstract("primed variable '" + var_side->name + "'");
            size_t ai = attr_of(var_side->name);
            std::string op_text = flipped ? flip_rel(op) : op;
            out.push_back({e.get(), ai, op_text, lit_side->lit_val});
            return;
        }
        default:
            reject_abstract("lists, iteration, primes, and nested temporals are not allowed");
    }
}

// Evaluates q given a fixed truth for every atom (by node pointer).
bool eval_under_signature(const expr_ptr& e,
                          const std::unordered_map<const expr*, bool>& truth) {
    switch (e->kind) {
        case expr::kind_t::lit:
            return e->lit_val.as_bool();
        case expr::kind_t::var:
            return truth.at(e.get());
        case expr::kind_t::not_:
            return !eval_under_signature(e->a, truth);
        case expr::kind_t::bin:
            switch (e->op) {
                case bin_op::and_:
                    return eval_under_signature(e->a, truth) && eval_under_signature(e->b, truth);
                case bin_op::or_:
                    return eval_under_signature(e->a, truth) || eval_under_signature(e->b, truth);
                case bin_op::implies:
                    return !eval_under_signature(e->a, truth) || eval_under_signature(e->b, truth);
                default:
                    return truth.at(e.get());
            }
        default:
            throw model_error("eval_under_signature: non-atom leaf");
    }
}

// Kleene evaluation with per-atom truth values (the over-approximating
// fallback when the region product exceeds its budget).
tv eval_under_kleene(const expr_ptr& e, const std::unordered_map<const expr*, tv>& truth) {
    switch (e->kind) {
        case expr::kind_t::lit:
            return e->lit_val.as_bool() ? tv::t : tv::f;
        case expr::kind_t::var:
            return truth.at(e.get());
        case expr::kind_t::not_:
            return tv_not(eval_under_kleene(e->a, truth));
        case expr::kind_t::bin:
            switch (e->op) {
                case bin_op::and_:
                    return tv_and(eval_under_kleene(e->a, truth), eval_under_kleene(e->b, truth));
                case bin_op::or_:
                    return tv_or(eval_under_kleene(e->a, truth), eval_under_kleene(e->b, truth));
                case bin_op::implies:
                    return tv_implies(eval_under_kleene(e->a, truth),
                                      eval_under_kleene(e->b, truth));
                default:
                    return truth.at(e.get());
            }
        default:
            throw model_error("eval_under_kleene: non-atom leaf");
    }
}

constexpr uint64_t k_region_budget = 1ull << 20;

}  // namespace

void require_abstractly_checkable(const expr_ptr& q, const std::vector<std::string>& attrs,
                                  const std::vector<value_tag>& tags) {
    std::vector<atom_info> atoms;
    collect_atoms(q, attrs, tags, atoms);
}

tv decide_validity(const expr_ptr& q, const std::vector<std::string>& attrs,
                   const std::vector<value_tag>& tags, const std::vector<constraint>& cs) {
    if (cs.size() != attrs.size()) throw model_error("decide_validity: constraint count");
    std::vector<atom_info> atoms;
    collect_atoms(q, attrs, tags, atoms);

    // Solution set per atom.
    std::vector<constraint> sols;
    sols.reserve(atoms.size());
    for (const auto& a : atoms)
        sols.push_back(constraint::from_cmp(a.op, a.rhs, tags[a.attr]));

    // Group atoms by attribute.
    std::map<size_t, std::vector<size_t>> by_attr;
    for (size_t i = 0; i < atoms.size(); ++i) by_attr[atoms[i].attr].push_back(i);

    // Per attribute, enumerate the non-empty truth signatures its constraint
    // admits: each concrete value lands in exactly one signature's region.
    struct attr_regions {
        std::vector<size_t> atom_ids;
        std::vector<uint32_t> signatures;  // bit i = truth of atom_ids[i]
    };
    std::vector<attr_regions> regions;
    uint64_t combos = 1;
    for (auto& [ai, ids] : by_attr) {
        attr_regions ar;
        ar.atom_ids = ids;
        if (ids.size() > 20) {
            combos = k_region_budget + 1;  // force the fallback
            regions.clear();
            break;
        }
        for (uint32_t mask = 0; mask < (1u << ids.size()); ++mask) {
            constraint r = cs[ai];
            for (size_t b = 0; b < ids.size() && !r.is_empty(); ++b) {
                const constraint& s = sols[ids[b]];
                r = r.intersect((mask >> b) & 1 ? s : s.complement());
            }
            if (!r.is_empty()) ar.signatures.push_back(mask);
        }
        if (ar.signatures.empty())
            throw model_error("decide_validity: empty abstract state constraint");
        combos *= ar.signatures.size();
        if (combos > k_region_budget) break;
        regions.push_back(std::move(ar));
    }

    if (combos > k_region_budget) {
        // Sound per-atom approximation: subset -> T, disjoint -> F, else U.
        std::unordered_map<const expr*, tv> truth;
        for (size_t i = 0; i < atoms.size(); ++i) {
            const constraint& c = cs[atoms[i].attr];
            tv t = c.subset_of(sols[i]) ? tv::t
                   : c.disjoint_with(sols[i]) ? tv::f
                                              : tv::u;
            truth[atoms[i].node] = t;
        }
        return eval_under_kleene(q, truth);
    }

    // Exact product walk over per-attribute region signatures.
    std::vector<size_t> pick(regions.size(), 0);
    bool any_t = false, any_f = false;
    while (true) {
        std::unordered_map<const expr*, bool> truth;
        for (size_t g = 0; g < regions.size(); ++g) {
            uint32_t mask = regions[g].signatures[pick[g]];
            for (size_t b = 0; b < regions[g].atom_ids.size(); ++b)
                truth[atoms[regions[g].atom_ids[b]].node] = (mask >> b) & 1;
        }
        (eval_under_signature(q, truth) ? any_t : any_f) = true;
        if (any_t && any_f) return tv::u;

        size_t g = 0;
        for (; g < regions.size(); ++g) {
            if (++pick[g] < regions[g].signatures.size()) break;
            pick[g] = 0;
        }
        if (g == regions.size()) break;
    }
    if (any_t && !any_f) return tv::t;
    if (any_f && !any_t) return tv::f;
    return tv::u;  // no atoms and unreachable; defensive
}

bool is_plain_g(const expr_ptr& p) {
    return p->kind == expr::kind_t::temp_g && !contains_temporal(p->a);
}

namespace {

// ---------------------------------------------------------------------------
// Leaf checkers.

std::unordered_map<std::string, size_t> index_of(const std::vector<std::string>& attrs) {
    std::unordered_map<std::string, size_t> idx;
    for (size_t i = 0; i < attrs.size(); ++i) idx.emplace(attrs[i], i);
    return idx;
}

struct leaf_result {
    tv truth = tv::t;
    std::optional<witness> wit;
    bool vacuous = false;
};

leaf_result check_g_timeline(const model& m, const std::vector<state_vector>& tl,
                             const std::vector<uint64_t>& seqs, const expr_ptr& body,
                             const check_options& opt, check_stats* stats,
                             const std::unordered_map<std::string, size_t>& idx) {
    eval_env env;
    env.attrs = &m.attrs;
    env.idx = &idx;
    env.timeline = &tl;
    env.timeline_seq = &seqs;
    uint64_t checked = 0;
    for (size_t i = 1; i < tl.size(); ++i) {
        env.cur = &tl[i];
        env.next = i + 1 < tl.size() ? &tl[i + 1] : nullptr;
        env.pos = i;
        env.seq = seqs[i];
        tv r = eval_bool(body, env);
        if (r == tv::f) {
            if (stats) stats->states_checked += checked + 1;
            return {tv::f, witness{seqs[i], m.state_key(tl[i]), print_expr(body)}, false};
        }
        if (r == tv::u) {
            if (opt.strict_undefined)
                return {tv::f,
                        witness{seqs[i], m.state_key(tl[i]),
                                "undefined at checked state (strict mode)"},
                        false};
            if (stats) stats->states_skipped++;
        } else {
            checked++;
        }
    }
    if (stats) stats->states_checked += checked;
    return {tv::t, std::nullopt, checked == 0};
}

leaf_result check_f_timeline(const model& m, const std::vector<state_vector>& tl,
                             const std::vector<uint64_t>& seqs, const expr_ptr& body,
                             const std::unordered_map<std::string, size_t>& idx) {
    eval_env env;
    env.attrs = &m.attrs;
    env.idx = &idx;
    env.timeline = &tl;
    env.timeline_seq = &seqs;
    for (size_t i = 1; i < tl.size(); ++i) {
        env.cur = &tl[i];
        env.next = i + 1 < tl.size() ? &tl[i + 1] : nullptr;
        env.pos = i;
        env.seq = seqs[i];
        if (eval_bool(body, env) == tv::t) return {tv::t, std::nullopt, false};
    }
    return {tv::f,
            witness{seqs.empty() ? 0 : seqs.back(),
                    m.state_key(tl.empty() ? state_vector{} : tl.back()),
                    "never satisfied: " + print_expr(body)},
            false};
}

leaf_result check_p_lsm(const model& m, const expr& p) {
    auto vars = free_vars(p.slots[0]);
    for (int s : {1, 2})
        for (const auto& v : free_vars(p.slots[s])) vars.insert(v);
    if (vars.size() != 1)
        throw config_error("P property must constrain exactly one attribute");
    const std::string attr = *vars.begin();
    size_t ai = SIZE_MAX;
    for (size_t i = 0; i < m.attrs.size(); ++i)
        if (m.attrs[i] == attr) ai = i;
    if (ai == SIZE_MAX)
        throw config_error("property references unknown attribute '" + attr + "'");
    path_spec spec = path_spec::from_exprs("", attr, m.tags[ai],
                                           {p.slots[0], p.slots[1], p.slots[2]});
    int prev = -1;
    bool saw_f1 = false;
    for (const auto& st : m.steps) {
        if (st.attr != ai || !st.val.is_value()) continue;
        int slot = spec.slot_of(st.val.as_value());
        if (slot < 0) continue;
        if (slot == 0) saw_f1 = true;
        if (prev == 0 && slot == 2)
            return {tv::f,
                    witness{st.seq, attr + "=" + st.val.as_value().canon(),
                            "retained subsequence steps from f1 directly to f3"},
                    false};
        prev = slot;
    }
    return {tv::t, std::nullopt, !saw_f1};
}

// Evaluates the DSM body at one state against its successor set.
tv eval_dsm_state(const model& m, uint32_t s, const expr_ptr& body, bool primed,
                  const std::unordered_map<std::string, size_t>& idx,
                  const std::vector<std::vector<uint32_t>>& adj, uint64_t* f_seq) {
    eval_env env;
    env.attrs = &m.attrs;
    env.idx = &idx;
    env.cur = &m.states[s];
    env.seq = m.first_seq[s];
    if (!primed) return eval_bool(body, env);
    if (adj[s].empty()) return tv::u;
    bool any_t = false, any_f = false, any_u = false;
    uint64_t best = 0;
    for (uint32_t t : adj[s]) {
        env.next = &m.states[t];
        tv r = eval_bool(body, env);
        if (r == tv::t) any_t = true;
        if (r == tv::u) any_u = true;
        if (r == tv::f) {
            any_f = true;
            uint64_t es = m.edges.at({s, t}).first_seq;
            if (best == 0 || es < best) best = es;
        }
    }
    if (any_t && any_f) return tv::u;  // conflicting successors
    if (any_f) {
        if (f_seq) *f_seq = best;
        return tv::f;
    }
    return any_u ? tv::u : tv::t;
}

// ---------------------------------------------------------------------------
// Top-level skeleton: boolean combinations of temporal leaves.

struct skeleton_result {
    tv truth;
    std::vector<witness> false_wits;  // witnesses of leaves that evaluated F
    bool all_vacuous = true;
    size_t leaves = 0;
};

skeleton_result eval_skeleton(const model& m, const expr_ptr& p,
                              const std::function<leaf_result(const expr_ptr&)>& leaf) {
    switch (p->kind) {
        case expr::kind_t::temp_g:
        case expr::kind_t::temp_f:
        case expr::kind_t::temp_p: {
            leaf_result r = leaf(p);
            skeleton_result s{r.truth, {}, r.vacuous, 1};
            if (r.truth == tv::f && r.wit) s.false_wits.push_back(*r.wit);
            return s;
        }
        case expr::kind_t::not_: {
            skeleton_result a = eval_skeleton(m, p->a, leaf);
            a.truth = tv_not(a.truth);
            return a;
        }
        case expr::kind_t::bin: {
            if (p->op != bin_op::and_ && p->op != bin_op::or_ && p->op != bin_op::implies)
                throw config_error(
                    "a property must be a boolean combination of G[...], F[...], P[...]");
            skeleton_result a = eval_skeleton(m, p->a, leaf);
            skeleton_result b = eval_skeleton(m, p->b, leaf);
            skeleton_result out;
            out.truth = p->op == bin_op::and_ ? tv_and(a.truth, b.truth)
                        : p->op == bin_op::or_ ? tv_or(a.truth, b.truth)
                                               : tv_implies(a.truth, b.truth);
            out.false_wits = std::move(a.false_wits);
            out.false_wits.insert(out.false_wits.end(), b.false_wits.begin(),
                                  b.false_wits.end());
            out.all_vacuous = a.all_vacuous && b.all_vacuous;
            out.leaves = a.leaves + b.leaves;
            return out;
        }
        default:
            throw config_error(
                "a property must be a boolean combination of G[...], F[...], P[...]");
    }
}

verdict finish_skeleton(const model& m, const skeleton_result& s,
                        const std::vector<uint64_t>& seqs, const std::string& last_key) {
    verdict v;
    if (s.truth == tv::t) {
        v.kind = verdict_kind::true_;
        if (s.all_vacuous && s.leaves > 0) {
            v.vacuous = true;
            v.detail = "vacuous";
        }
        return v;
    }
    v.kind = verdict_kind::false_;
    if (!s.false_wits.empty()) {
        const witness* best = &s.false_wits[0];
        for (const auto& w : s.false_wits)
            if (w.seq < best->seq) best = &w;
        v.wit = *best;
    } else {
        v.wit = witness{seqs.empty() ? 0 : seqs.back(), last_key, "negated sub-property held"};
    }
    (void)m;
    return v;
}

}  // namespace

verdict check_lsm(const model& m, const expr_ptr& p, const check_options& opt,
                  check_stats* stats) {
    if (m.kind != model_kind::lsm) throw model_error("check_lsm requires an LSM");
    auto idx = index_of(m.attrs);

    std::vector<state_vector> tl;
    std::vector<uint64_t> seqs;
    tl.reserve(m.steps.size() + 1);
    seqs.reserve(m.steps.size() + 1);
    m.walk([&](size_t, const state_vector& s) { tl.push_back(s); });
    seqs.push_back(0);
    for (const auto& st : m.steps) seqs.push_back(st.seq);

    auto leaf = [&](const expr_ptr& node) -> leaf_result {
        switch (node->kind) {
            case expr::kind_t::temp_g:
                return check_g_timeline(m, tl, seqs, node->a, opt, stats, idx);
            case expr::kind_t::temp_f:
                return check_f_timeline(m, tl, seqs, node->a, idx);
            case expr::kind_t::temp_p:
                return check_p_lsm(m, *node);
            default:
                throw model_error("leaf: non-temporal node");
        }
    };
    skeleton_result s = eval_skeleton(m, p, leaf);
    return finish_skeleton(m, s, seqs, m.state_key(tl.back()));
}

verdict check_dsm(const model& m, const expr_ptr& p, const check_options& opt,
                  check_stats* stats) {
    if (m.kind != model_kind::dsm) throw model_error("check_dsm requires a DSM");
    if (!is_plain_g(p))
        throw config_error(
            "this property requires LSM: distinct-state models accept only a single "
            "G[...] with a temporal-free body");
    const expr_ptr body = p->a;
    const bool primed = contains_primed(body);
    auto idx = index_of(m.attrs);

    std::vector<std::vector<uint32_t>> adj(m.states.size());
    for (const auto& [k, info] : m.edges) adj[k.first].push_back(k.second);

    uint64_t checked = 0, skipped = 0;
    std::optional<witness> best;
    for (uint32_t s = 1; s < m.states.size(); ++s) {
        uint64_t f_seq = 0;
        tv r = eval_dsm_state(m, s, body, primed, idx, adj, &f_seq);
        if (r == tv::f) {
            uint64_t at = primed && f_seq ? f_seq : m.first_seq[s];
            if (!best || at < best->seq)
                best = witness{at, m.state_key(m.states[s]), print_expr(body)};
            checked++;
        } else if (r == tv::u) {
            if (opt.strict_undefined) {
                verdict v;
                v.kind = verdict_kind::false_;
                v.wit = witness{m.first_seq[s], m.state_key(m.states[s]),
                                "undefined at checked state (strict mode)"};
                v.property = print_expr(p);
                return v;
            }
            skipped++;
        } else {
            checked++;
        }
    }
    if (stats) {
        stats->states_checked += checked;
        stats->states_skipped += skipped;
    }
    verdict v;
    if (best) {
        v.kind = verdict_kind::false_;
        v.wit = *best;
    } else {
        v.kind = verdict_kind::true_;
        if (checked == 0) {
            v.vacuous = true;
            v.detail = "vacuous";
        }
    }
    return v;
}

verdict check_asm(const model& m, const expr_ptr& p, const check_options& opt,
                  check_stats* stats) {
    if (m.kind != model_kind::asm_) throw model_error("check_asm requires an ASM");
    if (!is_plain_g(p))
        throw config_error(
            "this property requires LSM: abstract models accept only a single "
            "G[...] with a temporal-free body");
    const expr_ptr body = p->a;
    if (contains_primed(body))
        throw config_error("not abstractly checkable: primed variables");
    require_abstractly_checkable(body, m.attrs, m.tags);

    std::vector<size_t> referenced;
    for (const auto& name : free_vars(body))
        for (size_t i = 0; i < m.attrs.size(); ++i)
            if (m.attrs[i] == name) referenced.push_back(i);

    uint64_t checked = 0, skipped = 0;
    std::optional<witness> incompat;
    for (uint32_t s = 1; s < m.states.size(); ++s) {
        const state_vector& st = m.states[s];
        bool unknown = false;
        for (size_t i : referenced)
            if (st[i].is_undefined()) unknown = true;
        if (unknown) {
            if (opt.strict_undefined) {
                verdict v;
                v.kind = verdict_kind::false_;
                v.wit = witness{m.first_seq[s], m.labeled_key(st),
                                "unknown component (strict mode)"};
                return v;
            }
            skipped++;
            continue;
        }
        std::vector<constraint> cs;
        cs.reserve(m.attrs.size());
        for (size_t i = 0; i < m.attrs.size(); ++i) cs.push_back(constraint::full(m.tags[i]));
        for (size_t i : referenced) cs[i] = characteristic(m.fns[i], st[i]);
        tv r = decide_validity(body, m.attrs, m.tags, cs);
        if (stats) stats->validity_checks++;
        checked++;
        if (r == tv::f) {
            verdict v;
            v.kind = verdict_kind::false_;
            v.wit = witness{m.first_seq[s], m.labeled_key(st), print_expr(body)};
            if (stats) {
                stats->states_checked += checked;
                stats->states_skipped += skipped;
            }
            return v;
        }
        if (r == tv::u && !incompat)
            incompat = witness{m.first_seq[s], m.labeled_key(st),
                               "abstraction too coarse for: " + print_expr(body)};
    }
    if (stats) {
        stats->states_checked += checked;
        stats->states_skipped += skipped;
    }
    verdict v;
    if (incompat) {
        v.kind = verdict_kind::incompatible;
        v.wit = *incompat;
        v.detail = incompat->detail;
    } else {
        v.kind = verdict_kind::true_;
        if (checked == 0) {
            v.vacuous = true;
            v.detail = "vacuous";
        }
    }
    return v;
}

verdict check_path(const model& m, const expr_ptr& p) {
    if (m.kind != model_kind::path || !m.path)
        throw model_error("check_path requires a path model");
    if (p->kind != expr::kind_t::temp_p)
        throw config_error("path models check only P[...] properties");

    // The property's slot constants must be covered by the model's slots
    // (equal up to normalize's slot-1/slot-3 disjunction splits).
    auto vars = free_vars(p->slots[0]);
    for (int s : {1, 2})
        for (const auto& v : free_vars(p->slots[s])) vars.insert(v);
    if (vars.size() != 1 || *vars.begin() != m.path->attr)
        throw config_error("property does not match the path abstraction's attribute '" +
                           m.path->attr + "'");
    path_spec ps = path_spec::from_exprs("", m.path->attr, m.path->tag,
                                         {p->slots[0], p->slots[1], p->slots[2]});
    for (int s = 0; s < 3; ++s)
        for (const auto& c : ps.slot_consts[s]) {
            bool found = false;
            for (const auto& mc : m.path->slot_consts[s])
                if (mc == c) found = true;
            if (!found)
                throw config_error("property slot " + std::to_string(s + 1) +
                                   " is not covered by the path abstraction");
        }

    verdict v;
    if (m.slot_state[0] < 0) {
        v.kind = verdict_kind::true_;
        v.vacuous = true;
        v.detail = "vacuous: no f1 state occurred";
        return v;
    }
    if (m.slot_state[2] >= 0) {
        auto it = m.edges.find({static_cast<uint32_t>(m.slot_state[0]),
                                static_cast<uint32_t>(m.slot_state[2])});
        if (it != m.edges.end()) {
            v.kind = verdict_kind::false_;
            v.wit = witness{it->second.first_seq,
                            "(" + m.path->slot_text[0] + ") -> (" + m.path->slot_text[2] + ")",
                            "path model contains an f1 -> f3 edge"};
            return v;
        }
    }
    v.kind = verdict_kind::true_;
    return v;
}

verdict check_model(const model& m, const expr_ptr& p, const check_options& opt,
                    check_stats* stats) {
    verdict v;
    switch (m.kind) {
        case model_kind::lsm: v = check_lsm(m, p, opt, stats); break;
        case model_kind::dsm: v = check_dsm(m, p, opt, stats); break;
        case model_kind::asm_: v = check_asm(m, p, opt, stats); break;
        case model_kind::path: v = check_path(m, p); break;
    }
    v.property = print_expr(p);
    return v;
}

tv eval_state_pred(const expr_ptr& q, const std::vector<std::string>& attrs,
                   const state_vector& s, uint64_t seq) {
    if (contains_temporal(q)) throw model_error("eval_state_pred: temporal operator in predicate");
    if (contains_primed(q)) throw model_error("eval_state_pred: primed variable in predicate");
    std::unordered_map<std::string, size_t> idx;
    for (size_t i = 0; i < attrs.size(); ++i) idx[attrs[i]] = i;
    std::map<std::string, value> bindings;
    eval_env env;
    env.attrs = &attrs;
    env.idx = &idx;
    env.cur = &s;
    env.bindings = &bindings;
    env.seq = seq;
    return eval_bool(q, env);
}

verdict combine_conjunct_verdicts(const std::string& name, const std::vector<verdict>& parts) {
    verdict out;
    out.property = name;
    out.kind = verdict_kind::true_;
    out.vacuous = !parts.empty();
    const verdict* worst_false = nullptr;
    const verdict* first_incompat = nullptr;
    for (const auto& v : parts) {
        if (!v.vacuous) out.vacuous = false;
        if (v.kind == verdict_kind::false_) {
            if (!worst_false ||
                (v.wit && worst_false->wit && v.wit->seq < worst_false->wit->seq))
                worst_false = &v;
        } else if (v.kind == verdict_kind::incompatible && !first_incompat) {
            first_incompat = &v;
        }
    }
    if (worst_false) {
        std::string conjunct = worst_false->property;
        out = *worst_false;
        out.vacuous = false;
        if (parts.size() > 1) out.detail = "failed conjunct: " + conjunct;
    } else if (first_incompat) {
        std::string conjunct = first_incompat->property;
        out = *first_incompat;
        out.vacuous = false;
        if (parts.size() > 1 && out.detail.empty())
            out.detail = "incompatible conjunct: " + conjunct;
    }
    out.property = name;
    if (out.vacuous && out.detail.empty()) out.detail = "vacuous";
    return out;
}

verdict check_normalized(const model& m, const std::string& name,
                         const std::vector<expr_ptr>& forms, const check_options& opt,
                         check_stats* stats) {
    std::vector<verdict> parts;
    parts.reserve(forms.size());
    for (const auto& f : forms) parts.push_back(check_model(m, f, opt, stats));
    return combine_conjunct_verdicts(name, parts);
}

}  // namespace fsmrv
