// SPDX-License-Identifier: Apache-2.0
//
// Canonical pretty-printer. print_expr emits minimal parentheses; the result
// reparses to a structurally identical tree (round-trip tested).

#include "fsmrv/prop/ast.hpp"

namespace fsmrv {

namespace {

// Binding strength; larger binds tighter. Matches the parser's ladder.
constexpr int lvl_implies = 1;
constexpr int lvl_or = 2;
constexpr int lvl_and = 3;
constexpr int lvl_rel = 4;
constexpr int lvl_add = 5;
constexpr int lvl_mul = 6;
constexpr int lvl_atom = 7;

int op_level(bin_op op) {
    switch (op) {
        case bin_op::implies: return lvl_implies;
        case bin_op::or_: return lvl_or;
        case bin_op::and_: return lvl_and;
        case bin_op::add: case bin_op::sub: return lvl_add;
        case bin_op::mul: case bin_op::div_: return lvl_mul;
        default: return lvl_rel;
    }
}

const char* op_text(bin_op op) {
    switch (op) {
        case bin_op::add: return "+";
        case bin_op::sub: return "-";
        case bin_op::mul: return "*";
        case bin_op::div_: return "/";
        case bin_op::eq: return "==";
        case bin_op::ne: return "!=";
        case bin_op::lt: return "<";
        case bin_op::le: return "<=";
        case bin_op::gt: return ">";
        case bin_op::ge: return ">=";
        case bin_op::in: return "in";
        case bin_op::and_: return "&&";
        case bin_op::or_: return "||";
        case bin_op::implies: return "->";
    }
    return "?";
}

std::string print_rec(const expr_ptr& e, int parent, bool full);

std::string maybe_paren(const expr_ptr& e, int parent, int self, const std::string& body,
                        bool full) {
    if (full || self < parent) return "(" + body + ")";
    return body;
}

std::string print_rec(const expr_ptr& e, int parent, bool full) {
    switch (e->kind) {
        case expr::kind_t::lit: return e->lit_val.canon();
        case expr::kind_t::var: return e->name + (e->primed ? "'" : "");
        case expr::kind_t::bin: {
            int self = op_level(e->op);
            // Left-associative operators print the right child one level
            // tighter; right-associative implication is the mirror image.
            int la = self, lb = self + 1;
            if (e->op == bin_op::implies) { la = self + 1; lb = self; }
            if (e->op == bin_op::in) { la = lvl_add; lb = lvl_atom; }
            std::string body = print_rec(e->a, la, full) + " " + op_text(e->op) + " " +
                               print_rec(e->b, lb, full);
            return maybe_paren(e, parent, self, body, full);
        }
        case expr::kind_t::not_: {
            const expr_ptr& a = e->a;
            bool bare = a->kind == expr::kind_t::var || a->kind == expr::kind_t::not_ ||
                        a->kind == expr::kind_t::temp_g || a->kind == expr::kind_t::temp_f ||
                        a->kind == expr::kind_t::temp_p;
            return "!" + (bare && !full ? print_rec(a, lvl_atom, full)
                                        : "(" + print_rec(a, 0, full) + ")");
        }
        case expr::kind_t::list_lit: {
            std::string out = "{";
            for (size_t i = 0; i < e->elems.size(); i++) {
                if (i) out += ", ";
                out += print_rec(e->elems[i], 0, full);
            }
            return out + "}";
        }
        case expr::kind_t::range:
            // Ranges appear only in list positions, never nested in operators.
            return print_rec(e->a, lvl_add, full) + ":" + print_rec(e->b, lvl_add, full);
        case expr::kind_t::list_of: {
            const char* op = e->lop == list_op::min ? "min"
                             : e->lop == list_op::max ? "max" : "size";
            return print_rec(e->a, lvl_atom, full) + "#" + op;
        }
        case expr::kind_t::quant: {
            std::string head = e->is_all ? "all" : "exists";
            return head + "(" + e->name + ", " + print_rec(e->a, 0, full) + ", " +
                   print_rec(e->b, 0, full) + ")";
        }
        case expr::kind_t::temp_g: return "G[" + print_rec(e->a, 0, full) + "]";
        case expr::kind_t::temp_f: return "F[" + print_rec(e->a, 0, full) + "]";
        case expr::kind_t::temp_p:
            return "P[" + print_rec(e->slots[0], 0, full) + " ~~> " +
                   print_rec(e->slots[1], 0, full) + " ~~> " + print_rec(e->slots[2], 0, full) +
                   "]";
    }
    return "?";
}

}  // namespace

std::string print_expr(const expr_ptr& e) { return print_rec(e, 0, false); }

std::string print_expr_full_parens(const expr_ptr& e) { return print_rec(e, 0, true); }

}  // namespace fsmrv
