// SPDX-License-Identifier: Apache-2.0
//
// Property-language AST. One node type covers arithmetic, relational,
// boolean, list, quantified, and temporal expressions; `kind` says which
// fields are live. Nodes are immutable and shared.

#pragma once

#include <array>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fsmrv/value.hpp"

namespace fsmrv {

enum class bin_op {
    add, sub, mul, div_,                 // arithmetic
    eq, ne, lt, le, gt, ge, in,          // relational (`=` parses as eq)
    and_, or_, implies                   // boolean; implies is right-associative
};

enum class list_op { min, max, size };

struct expr;
using expr_ptr = std::shared_ptr<const expr>;

struct expr {
    enum class kind_t {
        lit,       // lit_val
        var,       // name, primed
        bin,       // op, a, b
        not_,      // a
        list_lit,  // elems (int literals)
        range,     // a=lo, b=hi — half-open [lo, hi)
        list_of,   // lop applied to list expression a
        quant,     // is_all, name (iter var), a (list expr), b (body)
        temp_g,    // a (body)
        temp_f,    // a (body)
        temp_p     // slots[0..2] = f1, f2, f3
    };

    kind_t kind;
    value lit_val;
    std::string name;
    bool primed = false;
    bool is_all = true;
    bin_op op = bin_op::eq;
    list_op lop = list_op::min;
    expr_ptr a, b;
    std::vector<expr_ptr> elems;
    std::array<expr_ptr, 3> slots;

    static expr_ptr make_lit(value v);
    static expr_ptr make_var(std::string name, bool primed = false);
    static expr_ptr make_bin(bin_op op, expr_ptr a, expr_ptr b);
    static expr_ptr make_not(expr_ptr a);
    static expr_ptr make_list(std::vector<expr_ptr> elems);
    static expr_ptr make_range(expr_ptr lo, expr_ptr hi);
    static expr_ptr make_list_of(list_op lop, expr_ptr lst);
    static expr_ptr make_quant(bool is_all, std::string var, expr_ptr lst, expr_ptr body);
    static expr_ptr make_g(expr_ptr body);
    static expr_ptr make_f(expr_ptr body);
    static expr_ptr make_p(expr_ptr f1, expr_ptr f2, expr_ptr f3);
};

bool structurally_equal(const expr_ptr& a, const expr_ptr& b);

// Free (unbound) variable names; quantifier iteration variables are excluded.
// Primed and unprimed references to x both report as "x".
std::set<std::string> free_vars(const expr_ptr& e);

bool contains_primed(const expr_ptr& e);
bool contains_temporal(const expr_ptr& e);

// Canonical text with minimal parentheses ('=' prints as '==').
std::string print_expr(const expr_ptr& e);
// Every compound subexpression parenthesized; used by parser round-trip tests.
std::string print_expr_full_parens(const expr_ptr& e);

// Parses a property / boolean expression; `where` names the source (for
// error messages). Throws parse_error with column info.
expr_ptr parse_property(const std::string& text, const std::string& where = "");

}  // namespace fsmrv
