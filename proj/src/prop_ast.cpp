// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/prop/ast.hpp"

namespace fsmrv {

static expr_ptr node(expr e) { return std::make_shared<const expr>(std::move(e)); }

expr_ptr expr::make_lit(value v) {
    expr e;
    e.kind = kind_t::lit;
    e.lit_val = std::move(v);
    return node(std::move(e));
}

expr_ptr expr::make_var(std::string name, bool primed) {
    expr e;
    e.kind = kind_t::var;
    e.name = std::move(name);
    e.primed = primed;
    return node(std::move(e));
}

expr_ptr expr::make_bin(bin_op op, expr_ptr a, expr_ptr b) {
    expr e;
    e.kind = kind_t::bin;
    e.op = op;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

expr_ptr expr::make_not(expr_ptr a) {
    expr e;
    e.kind = kind_t::not_;
    e.a = std::move(a);
    return node(std::move(e));
}

expr_ptr expr::make_list(std::vector<expr_ptr> elems) {
    expr e;
    e.kind = kind_t::list_lit;
    e.elems = std::move(elems);
    return node(std::move(e));
}

expr_ptr expr::make_range(expr_ptr lo, expr_ptr hi) {
    expr e;
    e.kind = kind_t::range;
    e.a = std::move(lo);
    e.b = std::move(hi);
    return node(std::move(e));
}

expr_ptr expr::make_list_of(list_op lop, expr_ptr lst) {
    expr e;
    e.kind = kind_t::list_of;
    e.lop = lop;
    e.a = std::move(lst);
    return node(std::move(e));
}

expr_ptr expr::make_quant(bool is_all, std::string var, expr_ptr lst, expr_ptr body) {
    expr e;
    e.kind = kind_t::quant;
    e.is_all = is_all;
    e.name = std::move(var);
    e.a = std::move(lst);
    e.b = std::move(body);
    return node(std::move(e));
}

expr_ptr expr::make_g(expr_ptr body) {
    expr e;
    e.kind = kind_t::temp_g;
    e.a = std::move(body);
    return node(std::move(e));
}

expr_ptr expr::make_f(expr_ptr body) {
    expr e;
    e.kind = kind_t::temp_f;
    e.a = std::move(body);
    return node(std::move(e));
}

expr_ptr expr::make_p(expr_ptr f1, expr_ptr f2, expr_ptr f3) {
    expr e;
    e.kind = kind_t::temp_p;
    e.slots = {std::move(f1), std::move(f2), std::move(f3)};
    return node(std::move(e));
}

bool structurally_equal(const expr_ptr& a, const expr_ptr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case expr::kind_t::lit: return a->lit_val == b->lit_val;
        case expr::kind_t::var: return a->name == b->name && a->primed == b->primed;
        case expr::kind_t::bin:
            return a->op == b->op && structurally_equal(a->a, b->a) &&
                   structurally_equal(a->b, b->b);
        case expr::kind_t::not_: return structurally_equal(a->a, b->a);
        case expr::kind_t::list_lit: {
            if (a->elems.size() != b->elems.size()) return false;
            for (size_t i = 0; i < a->elems.size(); i++)
                if (!structurally_equal(a->elems[i], b->elems[i])) return false;
            return true;
        }
        case expr::kind_t::range:
            return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
        case expr::kind_t::list_of: return a->lop == b->lop && structurally_equal(a->a, b->a);
        case expr::kind_t::quant:
            return a->is_all == b->is_all && a->name == b->name &&
                   structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
        case expr::kind_t::temp_g:
        case expr::kind_t::temp_f: return structurally_equal(a->a, b->a);
        case expr::kind_t::temp_p:
            for (int i = 0; i < 3; i++)
                if (!structurally_equal(a->slots[i], b->slots[i])) return false;
            return true;
    }
    return false;
}

static void collect_vars(const expr_ptr& e, std::set<std::string>& bound,
                         std::set<std::string>& out) {
    if (!e) return;
    switch (e->kind) {
        case expr::kind_t::var:
            if (!bound.count(e->name)) out.insert(e->name);
            return;
        case expr::kind_t::quant: {
            collect_vars(e->a, bound, out);
            bool fresh = bound.insert(e->name).second;
            collect_vars(e->b, bound, out);
            if (fresh) bound.erase(e->name);
            return;
        }
        case expr::kind_t::temp_p:
            for (const auto& s : e->slots) collect_vars(s, bound, out);
            return;
        case expr::kind_t::list_lit:
            for (const auto& el : e->elems) collect_vars(el, bound, out);
            return;
        default:
            collect_vars(e->a, bound, out);
            collect_vars(e->b, bound, out);
            return;
    }
}

std::set<std::string> free_vars(const expr_ptr& e) {
    std::set<std::string> bound, out;
    collect_vars(e, bound, out);
    return out;
}

bool contains_primed(const expr_ptr& e) {
    if (!e) return false;
    if (e->kind == expr::kind_t::var) return e->primed;
    if (e->kind == expr::kind_t::temp_p)
        return contains_primed(e->slots[0]) || contains_primed(e->slots[1]) ||
               contains_primed(e->slots[2]);
    if (e->kind == expr::kind_t::list_lit) {
        for (const auto& el : e->elems)
            if (contains_primed(el)) return true;
        return false;
    }
    return contains_primed(e->a) || contains_primed(e->b);
}

bool contains_temporal(const expr_ptr& e) {
    if (!e) return false;
    switch (e->kind) {
        case expr::kind_t::temp_g:
        case expr::kind_t::temp_f:
        case expr::kind_t::temp_p: return true;
        case expr::kind_t::list_lit:
            for (const auto& el : e->elems)
                if (contains_temporal(el)) return true;
            return false;
        default: return contains_temporal(e->a) || contains_temporal(e->b);
    }
}

}  // namespace fsmrv
