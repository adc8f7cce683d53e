// SPDX-License-Identifier: Apache-2.0
//
// Exact value-set algebra for abstract checking. A constraint is the set of
// concrete values an attribute may take in an abstract state:
//   - numeric tags: a normalized union of intervals over the reals, with an
//     `integral` flag that snaps bounds to integers (so (1,2) is empty for an
//     int attribute and [1,3) equals {1,2});
//   - str tags: a finite set or the complement of one (the string universe is
//     open: traces may always contain unseen strings);
//   - bool tags: finite sets over {false, true} (complements normalize away);
//   - list tags: finite sets of list values (identity abstraction only).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsmrv/value.hpp"

namespace fsmrv {

struct interval {
    double lo, hi;
    bool lo_open = false, hi_open = false;
};

class interval_set {
  public:
    static interval_set empty(bool integral);
    static interval_set full(bool integral);
    static interval_set of(interval iv, bool integral);
    static interval_set singleton(double v, bool integral);
    // Solution set of "x op c" for op in == != < <= > >=.
    static interval_set from_cmp(const std::string& op, double c, bool integral);

    bool is_empty() const { return ivs_.empty(); }
    bool integral() const { return integral_; }
    const std::vector<interval>& parts() const { return ivs_; }

    bool contains(double v) const;
    interval_set complement() const;
    interval_set intersect(const interval_set& o) const;
    interval_set unite(const interval_set& o) const;
    bool subset_of(const interval_set& o) const;
    bool disjoint_with(const interval_set& o) const;

    std::string text() const;  // e.g. "[1:3)", "<324", ">=411", "[0:1) u [5:inf)"

  private:
    interval_set(std::vector<interval> ivs, bool integral)
        : ivs_(std::move(ivs)), integral_(integral) {
        normalize();
    }
    void normalize();

    std::vector<interval> ivs_;  // sorted, disjoint, non-adjacent
    bool integral_ = false;
};

// Finite or cofinite set of values sharing one tag.
class value_set {
  public:
    static value_set empty(value_tag tag);
    static value_set full(value_tag tag);
    static value_set of(std::vector<value> vals, bool complemented, value_tag tag);
    static value_set singleton(value v);

    bool is_empty() const;
    bool complemented() const { return complemented_; }
    const std::vector<value>& vals() const { return vals_; }

    bool contains(const value& v) const;
    value_set complement() const;
    value_set intersect(const value_set& o) const;
    value_set unite(const value_set& o) const;
    bool subset_of(const value_set& o) const;
    bool disjoint_with(const value_set& o) const;

    std::string text() const;  // {"E"} or !{"E"}

  private:
    value_set(std::vector<value> vals, bool complemented, value_tag tag);
    void normalize();

    std::vector<value> vals_;  // sorted, unique
    bool complemented_ = false;
    value_tag tag_;
};

// Tagged union of the two set kinds, dispatched on the attribute's tag.
class constraint {
  public:
    static constraint full(value_tag tag);
    static constraint none(value_tag tag);
    static constraint of(interval_set s, value_tag tag);
    static constraint of(value_set s, value_tag tag);
    static constraint singleton(const value& v);
    // Solution set of "x op c"; throws eval_error for ops illegal at the tag
    // (e.g. '<' on strings).
    static constraint from_cmp(const std::string& op, const value& c, value_tag tag);

    value_tag tag() const { return tag_; }
    bool numeric() const { return num_.has_value(); }
    const interval_set& intervals() const { return *num_; }
    const value_set& values() const { return *fin_; }

    bool is_empty() const;
    bool is_full() const;
    bool contains(const value& v) const;
    constraint complement() const;
    constraint intersect(const constraint& o) const;
    constraint unite(const constraint& o) const;
    bool subset_of(const constraint& o) const;
    bool disjoint_with(const constraint& o) const;

    std::string text() const;

  private:
    explicit constraint(value_tag tag) : tag_(tag) {}
    value_tag tag_;
    std::optional<interval_set> num_;
    std::optional<value_set> fin_;
};

}  // namespace fsmrv
