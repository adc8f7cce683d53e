// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/abstraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fsmrv/common.hpp"

namespace fsmrv {

abstraction_fn abstraction_fn::identity(std::string attr, value_tag tag) {
    abstraction_fn f;
    f.kind = kind_t::identity;
    f.attr = std::move(attr);
    f.tag = tag;
    return f;
}

abstraction_fn abstraction_fn::bool_pred(std::string attr, value_tag tag, expr_ptr pred) {
    abstraction_fn f;
    f.kind = kind_t::bool_pred;
    f.attr = std::move(attr);
    f.tag = tag;
    f.pred = std::move(pred);
    f.pred_text = print_expr(f.pred);
    return f;
}

abstraction_fn abstraction_fn::range(std::string attr, value_tag tag, std::vector<double> cuts) {
    abstraction_fn f;
    f.kind = kind_t::range;
    f.attr = std::move(attr);
    f.tag = tag;
    f.cutpoints = std::move(cuts);
    return f;
}

static std::string cut_text(double c) { return real_to_string(c); }

std::string abstraction_fn::label(const component& c) const {
    if (c.is_undefined()) return "?";
    if (c.is_value()) return c.as_value().canon();
    if (c.is_bool_abs()) {
        bool v = c.as_bool_abs().v;
        // For a single equality atom, render the constant itself: E / ~E.
        if (pred && pred->kind == expr::kind_t::bin && pred->op == bin_op::eq &&
            pred->a->kind == expr::kind_t::var && pred->b->kind == expr::kind_t::lit) {
            std::string base = pred->b->lit_val.tag() == value_tag::vt_str
                                   ? pred->b->lit_val.as_str()
                                   : pred->b->lit_val.canon();
            return v ? base : "~" + base;
        }
        return v ? pred_text : "~(" + pred_text + ")";
    }
    int i = c.as_bucket().idx;
    int n = int(cutpoints.size());
    if (n == 0 || i < 0 || i > n) return "B" + std::to_string(i);
    if (i == 0) return "<" + cut_text(cutpoints[0]);
    if (i == n) return ">=" + cut_text(cutpoints[n - 1]);
    return "[" + cut_text(cutpoints[i - 1]) + ":" + cut_text(cutpoints[i]) + ")";
}

nlohmann::json abstraction_fn::to_json() const {
    nlohmann::json j;
    switch (kind) {
        case kind_t::identity: j["kind"] = "identity"; break;
        case kind_t::bool_pred:
            j["kind"] = "bool";
            j["pred"] = pred_text;
            break;
        case kind_t::range:
            j["kind"] = "range";
            j["cuts"] = cutpoints;
            break;
    }
    return j;
}

abstraction_fn abstraction_fn::from_json(const nlohmann::json& j, std::string attr,
                                         value_tag tag) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return identity(std::move(attr), tag);
    if (kind == "bool") {
        expr_ptr pred = parse_property(j.at("pred").get<std::string>(), "abs " + attr);
        return bool_pred(std::move(attr), tag, std::move(pred));
    }
    if (kind == "range") return range(std::move(attr), tag, j.at("cuts").get<std::vector<double>>());
    throw parse_error("unknown abstraction kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Predicate evaluation and solution sets. Predicates are restricted to
// comparisons of the single attribute against constants, composed with
// && || !; validate_abstraction enforces the shape.

static const char* rel_text(bin_op op) {
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

// Extracts (op, constant) from an atom, flipping `3 < x` into `x > 3`.
static bool atom_parts(const expr_ptr& e, const std::string& attr, std::string* op, value* c) {
    if (e->kind != expr::kind_t::bin) return false;
    const char* rel = rel_text(e->op);
    if (!rel) return false;
    const expr_ptr& a = e->a;
    const expr_ptr& b = e->b;
    if (a->kind == expr::kind_t::var && !a->primed && a->name == attr &&
        b->kind == expr::kind_t::lit) {
        *op = rel;
        *c = b->lit_val;
        return true;
    }
    if (b->kind == expr::kind_t::var && !b->primed && b->name == attr &&
        a->kind == expr::kind_t::lit) {
        static const char* flip[] = {"==", "!=", ">", ">=", "<", "<="};
        static const char* orig[] = {"==", "!=", "<", "<=", ">", ">="};
        for (int i = 0; i < 6; i++)
            if (std::string(orig[i]) == rel) {
                *op = flip[i];
                *c = a->lit_val;
                return true;
            }
    }
    return false;
}

static bool cmp_concrete(const std::string& op, const value& v, const value& c) {
    if (v.is_numeric() && c.is_numeric()) {
        double a = v.num(), b = c.num();
        if (op == "==") return a == b;
        if (op == "!=") return a != b;
        if (op == "<") return a < b;
        if (op == "<=") return a <= b;
        if (op == ">") return a > b;
        if (op == ">=") return a >= b;
    }
    if (v.tag() != c.tag())
        throw eval_error("type mismatch: " + tag_name(v.tag()) + " vs " + tag_name(c.tag()));
    if (op == "==") return v == c;
    if (op == "!=") return v != c;
    throw eval_error("operator '" + op + "' is not defined for " + tag_name(v.tag()) + " values");
}

bool eval_pred_on_value(const expr_ptr& pred, const std::string& attr, const value& v) {
    switch (pred->kind) {
        case expr::kind_t::bin: {
            if (pred->op == bin_op::and_)
                return eval_pred_on_value(pred->a, attr, v) && eval_pred_on_value(pred->b, attr, v);
            if (pred->op == bin_op::or_)
                return eval_pred_on_value(pred->a, attr, v) || eval_pred_on_value(pred->b, attr, v);
            std::string op;
            value c;
            if (atom_parts(pred, attr, &op, &c)) return cmp_concrete(op, v, c);
            break;
        }
        case expr::kind_t::not_: return !eval_pred_on_value(pred->a, attr, v);
        default: break;
    }
    throw eval_error("abstraction predicate must compare '" + attr + "' with constants");
}

constraint pred_solution_set(const expr_ptr& pred, const std::string& attr, value_tag tag) {
    switch (pred->kind) {
        case expr::kind_t::bin: {
            if (pred->op == bin_op::and_)
                return pred_solution_set(pred->a, attr, tag)
                    .intersect(pred_solution_set(pred->b, attr, tag));
            if (pred->op == bin_op::or_)
                return pred_solution_set(pred->a, attr, tag)
                    .unite(pred_solution_set(pred->b, attr, tag));
            std::string op;
            value c;
            if (atom_parts(pred, attr, &op, &c)) return constraint::from_cmp(op, c, tag);
            break;
        }
        case expr::kind_t::not_:
            return pred_solution_set(pred->a, attr, tag).complement();
        default: break;
    }
    throw config_error("abstraction predicate must compare '" + attr + "' with constants");
}

component apply_abstraction(const abstraction_fn& fn, const component& concrete) {
    if (concrete.is_undefined()) return component::undefined();  // Unknown
    if (!concrete.is_value()) throw model_error("cannot re-abstract an abstract component");
    const value& v = concrete.as_value();
    switch (fn.kind) {
        case abstraction_fn::kind_t::identity: return concrete;
        case abstraction_fn::kind_t::bool_pred:
            return component(bool_abs{eval_pred_on_value(fn.pred, fn.attr, v)});
        case abstraction_fn::kind_t::range: {
            if (!v.is_numeric())
                throw model_error("range abstraction on non-numeric value for '" + fn.attr + "'");
            double x = v.num();
            int idx = 0;
            for (double c : fn.cutpoints) {
                if (x < c) break;
                idx++;
            }
            return component(bucket_abs{idx});
        }
    }
    throw model_error("unreachable abstraction kind");
}

constraint characteristic(const abstraction_fn& fn, const component& abstract) {
    if (abstract.is_undefined()) return constraint::full(fn.tag);  // Unknown
    switch (fn.kind) {
        case abstraction_fn::kind_t::identity:
            if (!abstract.is_value())
                throw model_error("identity abstraction expects a raw value component");
            return constraint::singleton(abstract.as_value());
        case abstraction_fn::kind_t::bool_pred: {
            if (!abstract.is_bool_abs())
                throw model_error("boolean abstraction expects a T/F component");
            constraint s = pred_solution_set(fn.pred, fn.attr, fn.tag);
            return abstract.as_bool_abs().v ? s : s.complement();
        }
        case abstraction_fn::kind_t::range: {
            if (!abstract.is_bucket())
                throw model_error("range abstraction expects a bucket component");
            int i = abstract.as_bucket().idx;
            int n = int(fn.cutpoints.size());
            if (i < 0 || i > n) throw model_error("bucket index out of range");
            bool integral = fn.tag == value_tag::vt_int;
            double lo = i == 0 ? -std::numeric_limits<double>::infinity() : fn.cutpoints[i - 1];
            double hi = i == n ? std::numeric_limits<double>::infinity() : fn.cutpoints[i];
            return constraint::of(
                interval_set::of(interval{lo, hi, i == 0, true}, integral), fn.tag);
        }
    }
    throw model_error("unreachable abstraction kind");
}

void validate_abstraction(const abstraction_fn& fn) {
    switch (fn.kind) {
        case abstraction_fn::kind_t::identity: return;
        case abstraction_fn::kind_t::bool_pred: {
            if (!fn.pred) throw config_error("bool abstraction for '" + fn.attr + "' has no predicate");
            if (fn.tag == value_tag::vt_int_list)
                throw config_error("bool abstraction is not defined for list attributes");
            // Shape and tag check: the solution set construction throws on
            // non-atom shapes and illegal operators for the tag.
            pred_solution_set(fn.pred, fn.attr, fn.tag);
            auto fv = free_vars(fn.pred);
            if (fv.size() != 1 || !fv.count(fn.attr))
                throw config_error("abstraction predicate for '" + fn.attr +
                                   "' must reference exactly that attribute");
            if (contains_primed(fn.pred) || contains_temporal(fn.pred))
                throw config_error("abstraction predicate must be a plain boolean expression");
            return;
        }
        case abstraction_fn::kind_t::range: {
            if (fn.tag != value_tag::vt_int && fn.tag != value_tag::vt_real)
                throw config_error("range abstraction requires a numeric attribute");
            if (fn.cutpoints.empty())
                throw config_error("range abstraction needs at least one cutpoint");
            for (size_t i = 1; i < fn.cutpoints.size(); i++)
                if (!(fn.cutpoints[i - 1] < fn.cutpoints[i]))
                    throw config_error("range cutpoints must be strictly increasing");
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// path_spec

int path_spec::slot_of(const value& v) const {
    int found = -1;
    for (int i = 0; i < 3; i++) {
        for (const value& c : slot_consts[i]) {
            if (c == v) {
                if (found >= 0)
                    throw model_error("path slots are not disjoint: value " + v.canon() +
                                      " matches slot " + std::to_string(found + 1) + " and " +
                                      std::to_string(i + 1));
                found = i;
            }
        }
    }
    return found;
}

// Collects the constants of a disjunction of `attr == constant` atoms.
static void collect_slot(const expr_ptr& e, const std::string& attr, std::vector<value>& out) {
    if (e->kind == expr::kind_t::bin && e->op == bin_op::or_) {
        collect_slot(e->a, attr, out);
        collect_slot(e->b, attr, out);
        return;
    }
    if (e->kind == expr::kind_t::bin && e->op == bin_op::eq) {
        const expr_ptr *v = nullptr, *c = nullptr;
        if (e->a->kind == expr::kind_t::var && e->b->kind == expr::kind_t::lit) {
            v = &e->a;
            c = &e->b;
        } else if (e->b->kind == expr::kind_t::var && e->a->kind == expr::kind_t::lit) {
            v = &e->b;
            c = &e->a;
        }
        if (v && !(*v)->primed && (*v)->name == attr) {
            out.push_back((*c)->lit_val);
            return;
        }
    }
    throw config_error("path slot must be a disjunction of '" + attr + " == constant' atoms, got " +
                       print_expr(e));
}

path_spec path_spec::from_exprs(std::string name, std::string attr, value_tag tag,
                                const std::array<expr_ptr, 3>& slots) {
    path_spec p;
    p.name = std::move(name);
    p.attr = std::move(attr);
    p.tag = tag;
    for (int i = 0; i < 3; i++) {
        collect_slot(slots[i], p.attr, p.slot_consts[i]);
        if (p.slot_consts[i].empty())
            throw config_error("path slot " + std::to_string(i + 1) + " is empty");
        for (const value& c : p.slot_consts[i])
            if (c.tag() != tag)
                throw config_error("path slot constant " + c.canon() + " does not match the " +
                                   tag_name(tag) + " attribute '" + p.attr + "'");
        p.slot_text[i] = print_expr(slots[i]);
    }
    for (int i = 0; i < 3; i++)
        for (int j = i + 1; j < 3; j++)
            for (const value& a : p.slot_consts[i])
                for (const value& b : p.slot_consts[j])
                    if (a == b)
                        throw config_error("path slots " + std::to_string(i + 1) + " and " +
                                           std::to_string(j + 1) + " share constant " + a.canon());
    return p;
}

}  // namespace fsmrv
