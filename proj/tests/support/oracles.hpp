// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations ("oracles") and random-input
// builders shared by the test suite. Every oracle here is deliberately
// written with a different algorithm than the library code it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fsmrv/abstraction.hpp"
#include "fsmrv/checker.hpp"
#include "fsmrv/common.hpp"
#include "fsmrv/constraint.hpp"
#include "fsmrv/geo.hpp"
#include "fsmrv/model.hpp"
#include "fsmrv/prop/ast.hpp"
#include "fsmrv/value.hpp"

namespace testsupport {

// --- geometry ---------------------------------------------------------------

// Spherical law of cosines: independent of the haversine formulation.
inline double law_of_cosines_m(double lat1, double lon1, double lat2, double lon2) {
    const double rad = M_PI / 180.0;
    double p1 = lat1 * rad, p2 = lat2 * rad, dl = (lon2 - lon1) * rad;
    double c = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
    c = std::min(1.0, std::max(-1.0, c));
    return fsmrv::earth_radius_m * std::acos(c);
}

// --- random inputs -----------------------------------------------------------

struct rng {
    std::mt19937_64 eng;
    explicit rng(uint64_t seed) : eng(seed) {}
    uint64_t raw() { return eng(); }
    // Bounded pick; bias is irrelevant for test-input generation.
    uint64_t pick(uint64_t n) { return eng() % n; }
    int64_t range(int64_t lo, int64_t hi) {  // inclusive
        return lo + static_cast<int64_t>(pick(static_cast<uint64_t>(hi - lo + 1)));
    }
    bool chance(double p) { return (eng() >> 11) * 0x1.0p-53 < p; }
    double real(double lo, double hi) { return lo + ((eng() >> 11) * 0x1.0p-53) * (hi - lo); }
};

// A small attribute universe for the oracle-equivalence suites: 1-3
// attributes over int domains {0..k} (k <= 5) or the strings {"a","b","c"}.
struct tiny_universe {
    std::vector<std::string> attrs;
    std::vector<fsmrv::value_tag> tags;
    std::vector<std::vector<fsmrv::value>> domain;  // per attr

    static tiny_universe make(rng& r) {
        tiny_universe u;
        size_t n = 1 + r.pick(3);
        for (size_t i = 0; i < n; ++i) {
            u.attrs.push_back(std::string(1, static_cast<char>('x' + i)));
            if (r.chance(0.7)) {
                u.tags.push_back(fsmrv::value_tag::vt_int);
                int64_t k = r.range(1, 5);
                std::vector<fsmrv::value> dom;
                for (int64_t v = 0; v <= k; ++v) dom.emplace_back(v);
                u.domain.push_back(std::move(dom));
            } else {
                u.tags.push_back(fsmrv::value_tag::vt_str);
                u.domain.push_back({fsmrv::value(std::string("a")), fsmrv::value(std::string("b")),
                                    fsmrv::value(std::string("c"))});
            }
        }
        return u;
    }

    std::vector<fsmrv::attr_write> random_writes(rng& r, size_t min_n, size_t max_n) const {
        std::vector<fsmrv::attr_write> ws;
        size_t n = min_n + r.pick(max_n - min_n + 1);
        for (size_t i = 0; i < n; ++i) {
            size_t a = r.pick(attrs.size());
            ws.push_back({a, domain[a][r.pick(domain[a].size())], i + 1});
        }
        return ws;
    }

    // Random compatible abstraction per attribute.
    std::vector<fsmrv::abstraction_fn> random_fns(rng& r) const {
        using fsmrv::abstraction_fn;
        using fsmrv::expr;
        std::vector<abstraction_fn> fns;
        for (size_t i = 0; i < attrs.size(); ++i) {
            int roll = static_cast<int>(r.pick(3));
            if (roll == 0 || (tags[i] == fsmrv::value_tag::vt_str && roll == 2)) {
                fns.push_back(abstraction_fn::identity(attrs[i], tags[i]));
            } else if (roll == 1) {
                fsmrv::expr_ptr pred;
                if (tags[i] == fsmrv::value_tag::vt_int) {
                    static const fsmrv::bin_op ops[] = {fsmrv::bin_op::eq, fsmrv::bin_op::ne,
                                                        fsmrv::bin_op::lt, fsmrv::bin_op::le,
                                                        fsmrv::bin_op::gt, fsmrv::bin_op::ge};
                    pred = expr::make_bin(ops[r.pick(6)], expr::make_var(attrs[i]),
                                          expr::make_lit(fsmrv::value(r.range(0, 4))));
                } else {
                    pred = expr::make_bin(fsmrv::bin_op::eq, expr::make_var(attrs[i]),
                                          expr::make_lit(domain[i][r.pick(domain[i].size())]));
                }
                fns.push_back(abstraction_fn::bool_pred(attrs[i], tags[i], pred));
            } else {
                std::set<double> cutset;
                size_t k = 1 + r.pick(3);
                while (cutset.size() < k) cutset.insert(static_cast<double>(r.range(0, 5)));
                fns.push_back(abstraction_fn::range(
                    attrs[i], tags[i], std::vector<double>(cutset.begin(), cutset.end())));
            }
        }
        return fns;
    }

    // Random temporal-free, unprimed, abstractly checkable predicate.
    fsmrv::expr_ptr random_g_body(rng& r, int depth = 0) const {
        using fsmrv::expr;
        if (depth >= 3 || r.chance(0.45)) {  // leaf atom
            size_t a = r.pick(attrs.size());
            if (tags[a] == fsmrv::value_tag::vt_int) {
                static const fsmrv::bin_op ops[] = {fsmrv::bin_op::eq, fsmrv::bin_op::ne,
                                                    fsmrv::bin_op::lt, fsmrv::bin_op::le,
                                                    fsmrv::bin_op::gt, fsmrv::bin_op::ge};
                return expr::make_bin(ops[r.pick(6)], expr::make_var(attrs[a]),
                                      expr::make_lit(fsmrv::value(r.range(-1, 6))));
            }
            fsmrv::bin_op op = r.chance(0.5) ? fsmrv::bin_op::eq : fsmrv::bin_op::ne;
            return expr::make_bin(op, expr::make_var(attrs[a]),
                                  expr::make_lit(domain[a][r.pick(domain[a].size())]));
        }
        int roll = static_cast<int>(r.pick(4));
        if (roll == 3) return expr::make_not(random_g_body(r, depth + 1));
        fsmrv::bin_op op = roll == 0   ? fsmrv::bin_op::and_
                           : roll == 1 ? fsmrv::bin_op::or_
                                       : fsmrv::bin_op::implies;
        return expr::make_bin(op, random_g_body(r, depth + 1), random_g_body(r, depth + 1));
    }
};

// --- model oracles -----------------------------------------------------------

// Distinct-state and distinct-transition counts straight from the linear
// sweep, with string-keyed sets instead of the builder's interning.
struct dsm_counts {
    size_t states = 0;
    size_t edges = 0;
};

inline dsm_counts brute_force_dsm(const fsmrv::model& lsm) {
    std::set<std::string> states;
    std::set<std::pair<std::string, std::string>> edges;
    std::string prev;
    lsm.walk([&](size_t i, const fsmrv::state_vector& s) {
        std::string key = lsm.state_key(s);
        states.insert(key);
        if (i > 0) edges.insert({prev, key});
        prev = key;
    });
    return {states.size(), edges.size()};
}

// Retained-subsequence path verdict: scans the writes of one attribute and
// reports the seq of the first slot1 -> slot3 adjacency, if any.
inline std::optional<uint64_t> path_violation_oracle(const fsmrv::path_spec& ps,
                                                     const std::vector<fsmrv::attr_write>& ws,
                                                     size_t attr_idx) {
    int prev = -1;
    for (const auto& w : ws) {
        if (w.attr != attr_idx) continue;
        int s = ps.slot_of(w.val);
        if (s < 0) continue;
        if (prev == 0 && s == 2) return w.seq;
        prev = s;
    }
    return std::nullopt;
}

// --- decide_validity probe oracle ---------------------------------------------
//
// Exact T/F/U by exhaustive probing: atoms partition each attribute's axis at
// their constants, so probing every region the constraint admits (constants,
// their neighbors, midpoints, and one point beyond each end) covers every
// truth signature a concrete state could realize.

inline void collect_consts(const fsmrv::expr_ptr& e, const std::string& attr,
                           std::vector<fsmrv::value>& out) {
    using K = fsmrv::expr::kind_t;
    if (!e) return;
    if (e->kind == K::bin) {
        const fsmrv::expr* var = nullptr;
        const fsmrv::expr* lit = nullptr;
        if (e->a && e->a->kind == K::var && e->b && e->b->kind == K::lit) {
            var = e->a.get();
            lit = e->b.get();
        } else if (e->b && e->b->kind == K::var && e->a && e->a->kind == K::lit) {
            var = e->b.get();
            lit = e->a.get();
        }
        if (var && lit && var->name == attr) out.push_back(lit->lit_val);
        collect_consts(e->a, attr, out);
        collect_consts(e->b, attr, out);
        return;
    }
    collect_consts(e->a, attr, out);
    collect_consts(e->b, attr, out);
}

inline std::vector<fsmrv::value> probe_points(const fsmrv::expr_ptr& q, const std::string& attr,
                                              fsmrv::value_tag tag, const fsmrv::constraint& c) {
    std::vector<fsmrv::value> consts;
    collect_consts(q, attr, consts);
    std::vector<fsmrv::value> probes;
    if (tag == fsmrv::value_tag::vt_bool) {
        probes = {fsmrv::value(false), fsmrv::value(true)};
    } else if (tag == fsmrv::value_tag::vt_str) {
        for (const auto& v : consts) probes.push_back(v);
        if (!c.values().vals().empty())
            for (const auto& v : c.values().vals()) probes.push_back(v);
        probes.push_back(fsmrv::value(std::string("@fresh-probe")));
    } else {
        std::set<double> crit;
        for (const auto& v : consts)
            if (v.is_numeric()) crit.insert(v.num());
        for (const auto& iv : c.intervals().parts()) {
            if (std::isfinite(iv.lo)) crit.insert(iv.lo);
            if (std::isfinite(iv.hi)) crit.insert(iv.hi);
        }
        if (crit.empty()) crit.insert(0);
        std::set<double> pts;
        double step = tag == fsmrv::value_tag::vt_int ? 1.0 : 0.25;
        double prev = 0;
        bool first = true;
        for (double v : crit) {
            pts.insert(v - step);
            pts.insert(v);
            pts.insert(v + step);
            if (!first) pts.insert((prev + v) / 2);
            prev = v;
            first = false;
        }
        for (double p : pts) {
            if (tag == fsmrv::value_tag::vt_int) {
                probes.emplace_back(static_cast<int64_t>(std::llround(p)));
            } else {
                probes.emplace_back(p);
            }
        }
    }
    std::vector<fsmrv::value> in;
    for (const auto& p : probes)
        if (c.contains(p)) in.push_back(p);
    std::sort(in.begin(), in.end());
    in.erase(std::unique(in.begin(), in.end()), in.end());
    return in;
}

inline fsmrv::tv decide_validity_oracle(const fsmrv::expr_ptr& q,
                                        const std::vector<std::string>& attrs,
                                        const std::vector<fsmrv::value_tag>& tags,
                                        const std::vector<fsmrv::constraint>& cs) {
    std::vector<std::vector<fsmrv::value>> probes;
    for (size_t i = 0; i < attrs.size(); ++i)
        probes.push_back(probe_points(q, attrs[i], tags[i], cs[i]));
    for (const auto& p : probes)
        if (p.empty()) throw fsmrv::model_error("probe oracle: empty constraint");

    bool any_t = false, any_f = false;
    std::vector<size_t> pick(attrs.size(), 0);
    while (true) {
        fsmrv::state_vector s;
        for (size_t i = 0; i < attrs.size(); ++i)
            s.push_back(fsmrv::component(probes[i][pick[i]]));
        fsmrv::tv r = fsmrv::eval_state_pred(q, attrs, s, 1);
        if (r == fsmrv::tv::t)
            any_t = true;
        else if (r == fsmrv::tv::f)
            any_f = true;
        else
            throw fsmrv::model_error("probe oracle: Unknown on a fully defined state");
        if (any_t && any_f) return fsmrv::tv::u;
        size_t g = 0;
        for (; g < attrs.size(); ++g) {
            if (++pick[g] < probes[g].size()) break;
            pick[g] = 0;
        }
        if (g == attrs.size()) break;
    }
    if (any_t) return fsmrv::tv::t;
    return fsmrv::tv::f;
}

// --- misc ---------------------------------------------------------------------

inline std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace testsupport
