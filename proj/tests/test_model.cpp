// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <set>

#include "fsmrv/abstraction.hpp"
#include "fsmrv/model.hpp"
#include "fsmrv/prop/ast.hpp"
#include "support/oracles.hpp"

using namespace fsmrv;

static value iv(int64_t v) { return value(v); }

static std::vector<attr_write> int_writes(const std::vector<std::pair<size_t, int64_t>>& xs) {
    std::vector<attr_write> ws;
    for (size_t i = 0; i < xs.size(); ++i)
        ws.push_back({xs[i].first, iv(xs[i].second), i + 1});
    return ws;
}

TEST_CASE("linear model replays every write as one state") {
    auto ws = int_writes({{0, 1}, {1, 5}, {0, 1}, {0, 2}});
    model m = build_lsm({"x", "y"}, {value_tag::vt_int, value_tag::vt_int}, ws);
    CHECK(m.kind == model_kind::lsm);
    CHECK(m.state_count() == 5);  // initial all-Undefined state + one per write

    std::vector<state_vector> tl;
    m.walk([&](size_t, const state_vector& s) { tl.push_back(s); });
    REQUIRE(tl.size() == 5);
    CHECK(tl[0][0].is_undefined());
    CHECK(tl[0][1].is_undefined());
    CHECK(tl[1][0].as_value() == iv(1));
    CHECK(tl[1][1].is_undefined());
    CHECK(tl[2][1].as_value() == iv(5));
    CHECK(tl[3] == tl[2]);  // overwrite with the same value keeps the vector
    CHECK(tl[4][0].as_value() == iv(2));

    // lsm_state materializes the same timeline
    for (size_t i = 0; i < tl.size(); ++i) CHECK(m.lsm_state(i) == tl[i]);

    CHECK(m.state_key(tl[4]) == "x=2,y=5");
    CHECK(m.state_key(tl[0]) == "x=?,y=?");
}

TEST_CASE("distinct model merges repeated vectors and counts edges") {
    // x: 1 -> 2 -> 1 -> 2 -> 1: two distinct non-start states
    auto ws = int_writes({{0, 1}, {0, 2}, {0, 1}, {0, 2}, {0, 1}});
    model m = build_dsm({"x"}, {value_tag::vt_int}, ws);
    CHECK(m.kind == model_kind::dsm);
    CHECK(m.states.size() == 3);  // start, x=1, x=2
    CHECK(m.first_seq[0] == 0);
    CHECK(m.first_seq[1] == 1);
    CHECK(m.first_seq[2] == 2);

    // edges: start->1 (seq 1), 1->2 (seq 2, count 2), 2->1 (seq 3, count 2)
    REQUIRE(m.edges.size() == 3);
    auto e01 = m.edges.at({0, 1});
    CHECK(e01.count == 1);
    CHECK(e01.first_seq == 1);
    auto e12 = m.edges.at({1, 2});
    CHECK(e12.count == 2);
    CHECK(e12.first_seq == 2);
    auto e21 = m.edges.at({2, 1});
    CHECK(e21.count == 2);
    CHECK(e21.first_seq == 3);
}

TEST_CASE("self-loops appear when a write repeats the current vector") {
    auto ws = int_writes({{0, 1}, {0, 1}});
    model m = build_dsm({"x"}, {value_tag::vt_int}, ws);
    CHECK(m.states.size() == 2);
    CHECK(m.edges.count({1, 1}) == 1);
    CHECK(m.edges.at({1, 1}).count == 1);
}

TEST_CASE("graph_builder reports new states and edges incrementally") {
    graph_builder b(model_kind::dsm, {"x"}, {value_tag::vt_int},
                    {abstraction_fn::identity("x", value_tag::vt_int)});
    auto o1 = b.add({0, iv(1), 1});
    CHECK(o1.new_state);
    CHECK(o1.new_edge);
    CHECK(o1.state == 1);
    auto o2 = b.add({0, iv(2), 2});
    CHECK(o2.new_state);
    CHECK(o2.state == 2);
    auto o3 = b.add({0, iv(1), 3});
    CHECK_FALSE(o3.new_state);
    CHECK(o3.new_edge);  // 2 -> 1 is a new edge
    CHECK(o3.state == 1);
    auto o4 = b.add({0, iv(2), 4});
    CHECK_FALSE(o4.new_state);
    CHECK_FALSE(o4.new_edge);  // 1 -> 2 seen at seq 2
    model m = std::move(b).finish();
    CHECK(m.states.size() == 3);
}

TEST_CASE("DSM equals the brute-force collapse of the LSM on random traces") {
    testsupport::rng r(2718);
    for (int it = 0; it < 150; ++it) {
        testsupport::tiny_universe u = testsupport::tiny_universe::make(r);
        auto ws = u.random_writes(r, 1, 60);
        model lsm = build_lsm(u.attrs, u.tags, ws);
        model dsm = build_dsm(u.attrs, u.tags, ws);
        testsupport::dsm_counts oracle = testsupport::brute_force_dsm(lsm);
        CAPTURE(it);
        CHECK(dsm.states.size() == oracle.states);
        CHECK(dsm.edges.size() == oracle.edges);
    }
}

TEST_CASE("collapse_lsm equals build_dsm") {
    testsupport::rng r(12);
    for (int it = 0; it < 50; ++it) {
        testsupport::tiny_universe u = testsupport::tiny_universe::make(r);
        auto ws = u.random_writes(r, 1, 40);
        model lsm = build_lsm(u.attrs, u.tags, ws);
        model direct = build_dsm(u.attrs, u.tags, ws);
        model collapsed = collapse_lsm(lsm);
        CHECK(collapsed.kind == model_kind::dsm);
        REQUIRE(collapsed.states.size() == direct.states.size());
        for (size_t i = 0; i < direct.states.size(); ++i)
            CHECK(collapsed.states[i] == direct.states[i]);
        REQUIRE(collapsed.edges.size() == direct.edges.size());
        for (const auto& [key, info] : direct.edges) {
            REQUIRE(collapsed.edges.count(key) == 1);
            CHECK(collapsed.edges.at(key).count == info.count);
            CHECK(collapsed.edges.at(key).first_seq == info.first_seq);
        }
        CHECK(collapsed.first_seq == direct.first_seq);
    }
}

TEST_CASE("abstract model folds states through the abstraction") {
    // bool(x == 0) over x: 0 -> 3 -> 7 -> 0: abstract states T and F only
    auto ws = int_writes({{0, 0}, {0, 3}, {0, 7}, {0, 0}});
    std::vector<abstraction_fn> fns = {
        abstraction_fn::bool_pred("x", value_tag::vt_int, parse_property("x == 0"))};
    model m = build_asm({"x"}, {value_tag::vt_int}, fns, ws);
    CHECK(m.kind == model_kind::asm_);
    CHECK(m.states.size() == 3);  // start, T, F
    // 3 -> 7 folds onto the F self-loop
    CHECK(m.edges.count({2, 2}) == 1);

    // labeled key renders through the abstraction
    bool found = false;
    for (const auto& s : m.states) {
        if (s[0].is_bool_abs() && s[0].as_bool_abs().v) {
            CHECK(m.labeled_key(s) == "x=0");
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("ASM state count never exceeds the DSM's on random traces") {
    testsupport::rng r(1618);
    for (int it = 0; it < 100; ++it) {
        testsupport::tiny_universe u = testsupport::tiny_universe::make(r);
        auto ws = u.random_writes(r, 1, 60);
        auto fns = u.random_fns(r);
        model dsm = build_dsm(u.attrs, u.tags, ws);
        model am = build_asm(u.attrs, u.tags, fns, ws);
        CHECK(am.states.size() <= dsm.states.size());

        // every concrete state abstracts to a state present in the ASM
        std::set<std::string> abs_keys;
        for (const auto& s : am.states) abs_keys.insert(am.state_key(s));
        for (const auto& s : dsm.states) {
            state_vector a;
            for (size_t i = 0; i < s.size(); ++i) a.push_back(apply_abstraction(fns[i], s[i]));
            CHECK(abs_keys.count(am.state_key(a)) == 1);
        }
    }
}

TEST_CASE("path model keeps only slot-matching writes") {
    path_spec ps = path_spec::from_exprs(
        "auth", "m", value_tag::vt_str,
        {parse_property("m == \"req\""), parse_property("m == \"auth\""),
         parse_property("m == \"use\"")});

    auto w = [](int64_t seq, const char* s) {
        return attr_write{0, value(std::string(s)), uint64_t(seq)};
    };
    std::vector<attr_write> ws = {w(1, "req"), w(2, "noise"), w(3, "auth"),
                                  w(4, "use"),  w(5, "req"),  w(6, "use")};
    model m = build_path_model(ps, ws, 0);
    CHECK(m.kind == model_kind::path);
    REQUIRE(m.path.has_value());
    // start + the three slot nodes
    CHECK(m.states.size() == 4);
    CHECK(m.slot_state[0] > 0);
    CHECK(m.slot_state[1] > 0);
    CHECK(m.slot_state[2] > 0);

    // retained: req auth use req use — contains the req->use edge (seq 6)
    auto from = uint32_t(m.slot_state[0]);
    auto to = uint32_t(m.slot_state[2]);
    REQUIRE(m.edges.count({from, to}) == 1);
    CHECK(m.edges.at({from, to}).first_seq == 6);

    auto oracle = testsupport::path_violation_oracle(ps, ws, 0);
    REQUIRE(oracle.has_value());
    CHECK(*oracle == 6);
}

TEST_CASE("path_builder flags the retained f1 -> f3 transition") {
    path_spec ps = path_spec::from_exprs(
        "p", "x", value_tag::vt_int,
        {parse_property("x == 1"), parse_property("x == 2"), parse_property("x == 3")});
    path_builder b(ps);
    auto o1 = b.add(iv(1), 1);
    CHECK(o1.retained);
    CHECK(o1.to_slot == 0);
    auto o2 = b.add(iv(9), 2);
    CHECK_FALSE(o2.retained);
    auto o3 = b.add(iv(3), 3);
    CHECK(o3.retained);
    CHECK(o3.from_slot == 0);
    CHECK(o3.to_slot == 2);  // the violation shape
    model m = std::move(b).finish();
    CHECK(m.states.size() == 3);  // start, slot1, slot3; slot2 never seen
    CHECK(m.slot_state[1] == -1);
}

TEST_CASE("path model against the retained-subsequence oracle on random traces") {
    testsupport::rng r(97);
    path_spec ps = path_spec::from_exprs(
        "p", "x", value_tag::vt_int,
        {parse_property("x == 1"), parse_property("x == 2"), parse_property("x == 3")});
    for (int it = 0; it < 200; ++it) {
        std::vector<attr_write> ws;
        size_t n = 1 + r.pick(30);
        for (size_t i = 0; i < n; ++i) ws.push_back({0, iv(r.range(0, 4)), i + 1});
        model m = build_path_model(ps, ws, 0);
        auto oracle = testsupport::path_violation_oracle(ps, ws, 0);

        bool has_edge = m.slot_state[0] >= 0 && m.slot_state[2] >= 0 &&
                        m.edges.count({uint32_t(m.slot_state[0]), uint32_t(m.slot_state[2])});
        CAPTURE(it);
        CHECK(has_edge == oracle.has_value());
        if (oracle) {
            CHECK(m.edges.at({uint32_t(m.slot_state[0]), uint32_t(m.slot_state[2])}).first_seq ==
                  *oracle);
        }
    }
}

TEST_CASE("warm-up states keep Unknown components in abstract models") {
    std::vector<abstraction_fn> fns = {
        abstraction_fn::bool_pred("x", value_tag::vt_int, parse_property("x == 0")),
        abstraction_fn::bool_pred("y", value_tag::vt_int, parse_property("y == 0"))};
    auto ws = int_writes({{0, 0}, {1, 1}});
    model m = build_asm({"x", "y"}, {value_tag::vt_int, value_tag::vt_int}, fns, ws);
    REQUIRE(m.states.size() == 3);
    CHECK(m.states[0][0].is_undefined());
    CHECK(m.states[1][0].is_bool_abs());
    CHECK(m.states[1][1].is_undefined());  // y still Unknown after the first write
    CHECK(m.labeled_key(m.states[1]) == "x=0,y=?");
    CHECK_FALSE(m.states[2][1].is_undefined());
}

TEST_CASE("state keys disambiguate value kinds") {
    model m;
    m.attrs = {"a", "b", "c"};
    m.tags = {value_tag::vt_int, value_tag::vt_str, value_tag::vt_real};
    state_vector s{component(iv(1)), component(value(std::string("up"))),
                   component(value(2.5))};
    CHECK(m.state_key(s) == "a=1,b=\"up\",c=2.5");
}
