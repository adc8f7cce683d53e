// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/prop/normalize.hpp"

namespace fsmrv {

namespace {

void emit(const expr_ptr& p, std::vector<expr_ptr>& out);

void emit_g(const expr_ptr& g, std::vector<expr_ptr>& out) {
    const expr_ptr& body = g->a;
    if (body->kind == expr::kind_t::bin && body->op == bin_op::and_) {
        emit(expr::make_g(body->a), out);
        emit(expr::make_g(body->b), out);
        return;
    }
    if (body->kind == expr::kind_t::bin && body->op == bin_op::implies &&
        body->b->kind == expr::kind_t::bin && body->b->op == bin_op::and_) {
        emit(expr::make_g(expr::make_bin(bin_op::implies, body->a, body->b->a)), out);
        emit(expr::make_g(expr::make_bin(bin_op::implies, body->a, body->b->b)), out);
        return;
    }
    out.push_back(g);
}

void emit_p(const expr_ptr& p, std::vector<expr_ptr>& out) {
    const expr_ptr& f1 = p->slots[0];
    const expr_ptr& f3 = p->slots[2];
    if (f1->kind == expr::kind_t::bin && f1->op == bin_op::or_) {
        emit(expr::make_p(f1->a, p->slots[1], p->slots[2]), out);
        emit(expr::make_p(f1->b, p->slots[1], p->slots[2]), out);
        return;
    }
    if (f3->kind == expr::kind_t::bin && f3->op == bin_op::or_) {
        emit(expr::make_p(p->slots[0], p->slots[1], f3->a), out);
        emit(expr::make_p(p->slots[0], p->slots[1], f3->b), out);
        return;
    }
    out.push_back(p);
}

void emit(const expr_ptr& p, std::vector<expr_ptr>& out) {
    if (p->kind == expr::kind_t::bin && p->op == bin_op::and_) {
        emit(p->a, out);
        emit(p->b, out);
        return;
    }
    if (p->kind == expr::kind_t::temp_g) {
        emit_g(p, out);
        return;
    }
    if (p->kind == expr::kind_t::temp_p) {
        emit_p(p, out);
        return;
    }
    out.push_back(p);
}

}  // namespace

std::vector<expr_ptr> normalize(const expr_ptr& p) {
    std::vector<expr_ptr> out;
    emit(p, out);
    return out;
}

}  // namespace fsmrv
