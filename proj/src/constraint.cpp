// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fsmrv/common.hpp"

namespace fsmrv {

static constexpr double inf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// interval_set

interval_set interval_set::empty(bool integral) { return interval_set({}, integral); }

interval_set interval_set::full(bool integral) {
    return interval_set({interval{-inf, inf, true, true}}, integral);
}

interval_set interval_set::of(interval iv, bool integral) {
    return interval_set({iv}, integral);
}

interval_set interval_set::singleton(double v, bool integral) {
    return interval_set({interval{v, v, false, false}}, integral);
}

interval_set interval_set::from_cmp(const std::string& op, double c, bool integral) {
    if (op == "<") return of(interval{-inf, c, true, true}, integral);
    if (op == "<=") return of(interval{-inf, c, true, false}, integral);
    if (op == ">") return of(interval{c, inf, true, true}, integral);
    if (op == ">=") return of(interval{c, inf, false, true}, integral);
    if (op == "==") return singleton(c, integral);
    if (op == "!=") return singleton(c, integral).complement();
    throw eval_error("unsupported numeric comparison '" + op + "'");
}

// Snaps an interval to integer semantics (closed finite bounds) and reports
// emptiness. Infinite ends stay infinite.
static bool snap_int(interval& iv) {
    if (std::isfinite(iv.lo)) {
        double l = std::ceil(iv.lo);
        if (iv.lo_open && l == iv.lo) l += 1;
        iv.lo = l;
        iv.lo_open = false;
    }
    if (std::isfinite(iv.hi)) {
        double h = std::floor(iv.hi);
        if (iv.hi_open && h == iv.hi) h -= 1;
        iv.hi = h;
        iv.hi_open = false;
    }
    if (iv.lo > iv.hi) return false;
    if (iv.lo == iv.hi) return std::isfinite(iv.lo);  // (inf,inf] and [-inf,-inf) are empty
    return true;
}

static bool nonempty_real(const interval& iv) {
    if (iv.lo > iv.hi) return false;
    if (iv.lo == iv.hi) return !iv.lo_open && !iv.hi_open && std::isfinite(iv.lo);
    return true;
}

void interval_set::normalize() {
    std::vector<interval> keep;
    for (interval iv : ivs_) {
        if (integral_) {
            if (snap_int(iv)) keep.push_back(iv);
        } else if (nonempty_real(iv)) {
            keep.push_back(iv);
        }
    }
    std::sort(keep.begin(), keep.end(), [](const interval& a, const interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_open < b.lo_open;  // closed start sorts first
    });
    std::vector<interval> merged;
    for (const interval& iv : keep) {
        if (!merged.empty()) {
            interval& cur = merged.back();
            bool touches;
            if (integral_)
                touches = iv.lo <= cur.hi + 1;  // [1,2] and [3,4] merge over the integers
            else
                touches = iv.lo < cur.hi ||
                          (iv.lo == cur.hi && (!iv.lo_open || !cur.hi_open));
            if (touches) {
                if (iv.hi > cur.hi || (iv.hi == cur.hi && !iv.hi_open)) {
                    cur.hi = iv.hi;
                    cur.hi_open = iv.hi_open;
                }
                continue;
            }
        }
        merged.push_back(iv);
    }
    ivs_ = std::move(merged);
}

bool interval_set::contains(double v) const {
    for (const interval& iv : ivs_) {
        bool lo_ok = v > iv.lo || (v == iv.lo && !iv.lo_open);
        bool hi_ok = v < iv.hi || (v == iv.hi && !iv.hi_open);
        if (lo_ok && hi_ok) return true;
    }
    return false;
}

interval_set interval_set::complement() const {
    std::vector<interval> out;
    double lo = -inf;
    bool lo_open = true;
    for (const interval& iv : ivs_) {
        // Skip the degenerate (-inf,-inf) gap; finite lo == iv.lo gaps may be
        // the singleton point between two open-adjacent intervals.
        if (!(lo == iv.lo && std::isinf(lo)))
            out.push_back(interval{lo, iv.lo, lo_open, !iv.lo_open});
        lo = iv.hi;
        lo_open = !iv.hi_open;
    }
    if (lo < inf) out.push_back(interval{lo, inf, lo_open, true});
    return interval_set(std::move(out), integral_);
}

interval_set interval_set::intersect(const interval_set& o) const {
    std::vector<interval> out;
    for (const interval& a : ivs_) {
        for (const interval& b : o.ivs_) {
            interval r;
            if (a.lo > b.lo || (a.lo == b.lo && a.lo_open)) {
                r.lo = a.lo;
                r.lo_open = a.lo_open;
            } else {
                r.lo = b.lo;
                r.lo_open = b.lo_open;
            }
            if (a.lo == b.lo) r.lo_open = a.lo_open || b.lo_open;
            if (a.hi < b.hi || (a.hi == b.hi && a.hi_open)) {
                r.hi = a.hi;
                r.hi_open = a.hi_open;
            } else {
                r.hi = b.hi;
                r.hi_open = b.hi_open;
            }
            if (a.hi == b.hi) r.hi_open = a.hi_open || b.hi_open;
            out.push_back(r);
        }
    }
    return interval_set(std::move(out), integral_);
}

interval_set interval_set::unite(const interval_set& o) const {
    std::vector<interval> out = ivs_;
    out.insert(out.end(), o.ivs_.begin(), o.ivs_.end());
    return interval_set(std::move(out), integral_);
}

bool interval_set::subset_of(const interval_set& o) const {
    return intersect(o.complement()).is_empty();
}

bool interval_set::disjoint_with(const interval_set& o) const {
    return intersect(o).is_empty();
}

static std::string bound_text(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return real_to_string(v);
}

std::string interval_set::text() const {
    if (ivs_.empty()) return "{}";
    std::string out;
    for (size_t i = 0; i < ivs_.size(); i++) {
        const interval& iv = ivs_[i];
        if (i) out += " u ";
        if (std::isinf(iv.lo) && std::isinf(iv.hi)) {
            out += "any";
        } else if (std::isinf(iv.lo)) {
            out += (iv.hi_open ? "<" : "<=") + bound_text(iv.hi);
        } else if (std::isinf(iv.hi)) {
            out += (iv.lo_open ? ">" : ">=") + bound_text(iv.lo);
        } else if (iv.lo == iv.hi) {
            out += "{" + bound_text(iv.lo) + "}";
        } else {
            out += (iv.lo_open ? "(" : "[") + bound_text(iv.lo) + ":" + bound_text(iv.hi) +
                   (iv.hi_open ? ")" : "]");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// value_set

value_set::value_set(std::vector<value> vals, bool complemented, value_tag tag)
    : vals_(std::move(vals)), complemented_(complemented), tag_(tag) {
    normalize();
}

void value_set::normalize() {
    std::sort(vals_.begin(), vals_.end());
    vals_.erase(std::unique(vals_.begin(), vals_.end()), vals_.end());
    // The bool universe is {false, true}: complements normalize to finite sets.
    if (tag_ == value_tag::vt_bool && complemented_) {
        std::vector<value> rest;
        for (bool b : {false, true})
            if (!std::binary_search(vals_.begin(), vals_.end(), value(b))) rest.push_back(value(b));
        vals_ = std::move(rest);
        complemented_ = false;
    }
}

value_set value_set::empty(value_tag tag) { return value_set({}, false, tag); }
value_set value_set::full(value_tag tag) { return value_set({}, true, tag); }

value_set value_set::of(std::vector<value> vals, bool complemented, value_tag tag) {
    return value_set(std::move(vals), complemented, tag);
}

value_set value_set::singleton(value v) {
    value_tag t = v.tag();
    return value_set({std::move(v)}, false, t);
}

bool value_set::is_empty() const { return !complemented_ && vals_.empty(); }

bool value_set::contains(const value& v) const {
    bool in = std::binary_search(vals_.begin(), vals_.end(), v);
    return complemented_ ? !in : in;
}

value_set value_set::complement() const { return value_set(vals_, !complemented_, tag_); }

static std::vector<value> set_union(const std::vector<value>& a, const std::vector<value>& b) {
    std::vector<value> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

static std::vector<value> set_inter(const std::vector<value>& a, const std::vector<value>& b) {
    std::vector<value> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

static std::vector<value> set_diff(const std::vector<value>& a, const std::vector<value>& b) {
    std::vector<value> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

value_set value_set::intersect(const value_set& o) const {
    if (!complemented_ && !o.complemented_) return value_set(set_inter(vals_, o.vals_), false, tag_);
    if (!complemented_ && o.complemented_) return value_set(set_diff(vals_, o.vals_), false, tag_);
    if (complemented_ && !o.complemented_) return value_set(set_diff(o.vals_, vals_), false, tag_);
    return value_set(set_union(vals_, o.vals_), true, tag_);
}

value_set value_set::unite(const value_set& o) const {
    return complement().intersect(o.complement()).complement();
}

bool value_set::subset_of(const value_set& o) const { return intersect(o.complement()).is_empty(); }

bool value_set::disjoint_with(const value_set& o) const { return intersect(o).is_empty(); }

std::string value_set::text() const {
    std::string out = complemented_ ? "!{" : "{";
    for (size_t i = 0; i < vals_.size(); i++) {
        if (i) out += ",";
        out += vals_[i].canon();
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// constraint

static bool numeric_tag(value_tag t) {
    return t == value_tag::vt_int || t == value_tag::vt_real;
}

constraint constraint::full(value_tag tag) {
    constraint c(tag);
    if (numeric_tag(tag))
        c.num_ = interval_set::full(tag == value_tag::vt_int);
    else
        c.fin_ = value_set::full(tag);
    return c;
}

constraint constraint::none(value_tag tag) {
    constraint c(tag);
    if (numeric_tag(tag))
        c.num_ = interval_set::empty(tag == value_tag::vt_int);
    else
        c.fin_ = value_set::empty(tag);
    return c;
}

constraint constraint::of(interval_set s, value_tag tag) {
    constraint c(tag);
    c.num_ = std::move(s);
    return c;
}

constraint constraint::of(value_set s, value_tag tag) {
    constraint c(tag);
    c.fin_ = std::move(s);
    return c;
}

constraint constraint::singleton(const value& v) {
    constraint c(v.tag());
    if (numeric_tag(v.tag()))
        c.num_ = interval_set::singleton(v.num(), v.tag() == value_tag::vt_int);
    else
        c.fin_ = value_set::singleton(v);
    return c;
}

constraint constraint::from_cmp(const std::string& op, const value& c, value_tag tag) {
    if (numeric_tag(tag)) {
        if (!c.is_numeric())
            throw eval_error("comparison of numeric attribute with " + tag_name(c.tag()) +
                             " constant");
        return of(interval_set::from_cmp(op, c.num(), tag == value_tag::vt_int), tag);
    }
    if (op != "==" && op != "!=")
        throw eval_error("operator '" + op + "' is not defined for " + tag_name(tag) + " values");
    if (c.tag() != tag)
        throw eval_error("comparison of " + tag_name(tag) + " attribute with " +
                         tag_name(c.tag()) + " constant");
    value_set s = value_set::singleton(c);
    return of(op == "==" ? s : s.complement(), tag);
}

bool constraint::is_empty() const { return num_ ? num_->is_empty() : fin_->is_empty(); }

bool constraint::is_full() const {
    if (num_) {
        return num_->parts().size() == 1 && std::isinf(num_->parts()[0].lo) &&
               std::isinf(num_->parts()[0].hi);
    }
    return fin_->complemented() && fin_->vals().empty();
}

bool constraint::contains(const value& v) const {
    if (num_) return v.is_numeric() && num_->contains(v.num());
    return fin_->contains(v);
}

constraint constraint::complement() const {
    constraint c(tag_);
    if (num_) c.num_ = num_->complement();
    else c.fin_ = fin_->complement();
    return c;
}

static void check_same_kind(const constraint& a, const constraint& b) {
    if (a.numeric() != b.numeric())
        throw model_error("constraint kind mismatch (numeric vs finite)");
}

constraint constraint::intersect(const constraint& o) const {
    check_same_kind(*this, o);
    constraint c(tag_);
    if (num_) c.num_ = num_->intersect(o.intervals());
    else c.fin_ = fin_->intersect(o.values());
    return c;
}

constraint constraint::unite(const constraint& o) const {
    check_same_kind(*this, o);
    constraint c(tag_);
    if (num_) c.num_ = num_->unite(o.intervals());
    else c.fin_ = fin_->unite(o.values());
    return c;
}

bool constraint::subset_of(const constraint& o) const {
    check_same_kind(*this, o);
    return num_ ? num_->subset_of(o.intervals()) : fin_->subset_of(o.values());
}

bool constraint::disjoint_with(const constraint& o) const {
    check_same_kind(*this, o);
    return num_ ? num_->disjoint_with(o.intervals()) : fin_->disjoint_with(o.values());
}

std::string constraint::text() const {
    if (is_full()) return "any";
    return num_ ? num_->text() : fin_->text();
}

}  // namespace fsmrv
