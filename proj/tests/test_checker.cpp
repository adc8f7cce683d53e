// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "fsmrv/checker.hpp"
#include "fsmrv/common.hpp"
#include "fsmrv/model.hpp"
#include "fsmrv/prop/ast.hpp"
#include "fsmrv/prop/normalize.hpp"
#include "support/oracles.hpp"

using namespace fsmrv;

static expr_ptr parse(const std::string& t) { return parse_property(t); }
static value iv(int64_t v) { return value(v); }

static model int_lsm(const std::vector<int64_t>& xs) {
    std::vector<attr_write> ws;
    for (size_t i = 0; i < xs.size(); ++i) ws.push_back({0, iv(xs[i]), i + 1});
    return build_lsm({"x"}, {value_tag::vt_int}, ws);
}

// --- eval_state_pred -----------------------------------------------------------

TEST_CASE("eval_state_pred evaluates arithmetic and relations") {
    std::vector<std::string> attrs{"x", "y"};
    state_vector s{component(iv(3)), component(iv(4))};
    CHECK(eval_state_pred(parse("x + y == 7"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("x * y > 20"), attrs, s, 1) == tv::f);
    CHECK(eval_state_pred(parse("y - x == 1 && x / 3 == 1"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("x in {1,3,5}"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("y in 0:4"), attrs, s, 1) == tv::f);  // range excludes hi
    CHECK(eval_state_pred(parse("y in 0:5"), attrs, s, 1) == tv::t);
}

TEST_CASE("eval_state_pred three-valued logic over undefined components") {
    std::vector<std::string> attrs{"x", "y"};
    state_vector s{component(iv(3)), component()};  // y undefined
    CHECK(eval_state_pred(parse("y == 1"), attrs, s, 1) == tv::u);
    // short-circuits that do not need y stay decisive
    CHECK(eval_state_pred(parse("x == 3 || y == 1"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("x == 9 && y == 1"), attrs, s, 1) == tv::f);
    CHECK(eval_state_pred(parse("y == 1 || x == 3"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("y == 1 -> x == 9"), attrs, s, 1) == tv::u);
    CHECK(eval_state_pred(parse("x == 9 -> y == 1"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("!(y == 1)"), attrs, s, 1) == tv::u);
}

TEST_CASE("eval_state_pred quantifiers and list operators") {
    std::vector<std::string> attrs{"xs", "f"};
    state_vector s{component(value(int_list{3, 5, 9})), component(iv(5))};
    CHECK(eval_state_pred(parse("all(i, xs, i >= 3)"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("exists(i, xs, i == f)"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("all(i, xs, i != f)"), attrs, s, 1) == tv::f);
    CHECK(eval_state_pred(parse("xs#size == 3"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("xs#min == 3 && xs#max == 9"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("f in xs"), attrs, s, 1) == tv::t);
    CHECK(eval_state_pred(parse("all(i, 0:3, exists(j, xs, j > i))"), attrs, s, 1) == tv::t);

    // neutral elements on the empty list: min = +inf, max = -inf
    state_vector empty{component(value(int_list{})), component(iv(5))};
    CHECK(eval_state_pred(parse("xs#min > f"), attrs, empty, 1) == tv::t);
    CHECK(eval_state_pred(parse("xs#max < f"), attrs, empty, 1) == tv::t);
    CHECK(eval_state_pred(parse("xs#size == 0"), attrs, empty, 1) == tv::t);
}

TEST_CASE("eval_state_pred rejects type errors and temporal operators") {
    std::vector<std::string> attrs{"x"};
    state_vector s{component(iv(1))};
    CHECK_THROWS_AS(eval_state_pred(parse("x / 0 == 1"), attrs, s, 7), eval_error);
    CHECK_THROWS_AS(eval_state_pred(parse("x == \"s\""), attrs, s, 1), eval_error);
    CHECK_THROWS_AS(eval_state_pred(parse("G[x == 1]"), attrs, s, 1), model_error);
    CHECK_THROWS_AS(eval_state_pred(parse("x' == 1"), attrs, s, 1), model_error);
    CHECK_THROWS_AS(eval_state_pred(parse("zork == 1"), attrs, s, 1), eval_error);
}

// --- linear-model checking -------------------------------------------------------

TEST_CASE("G on the linear model") {
    model ok = int_lsm({1, 2, 3});
    verdict v = check_model(ok, parse("G[x >= 1]"));
    CHECK(v.kind == verdict_kind::true_);
    CHECK_FALSE(v.vacuous);

    model bad = int_lsm({1, 0, 3});
    verdict w = check_model(bad, parse("G[x >= 1]"));
    CHECK(w.kind == verdict_kind::false_);
    REQUIRE(w.wit.has_value());
    CHECK(w.wit->seq == 2);
    CHECK(w.wit->state == "x=0");
    CHECK(w.wit->detail == "x >= 1");
}

TEST_CASE("F on the linear model") {
    CHECK(check_model(int_lsm({1, 2, 3}), parse("F[x == 3]")).kind == verdict_kind::true_);
    verdict v = check_model(int_lsm({1, 2}), parse("F[x == 3]"));
    CHECK(v.kind == verdict_kind::false_);
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->seq == 2);  // reported at the end of the trace
    CHECK(v.wit->detail == "never satisfied: x == 3");
}

TEST_CASE("primed G compares consecutive states") {
    CHECK(check_model(int_lsm({1, 2, 2, 5}), parse("G[x' >= x]")).kind == verdict_kind::true_);
    verdict v = check_model(int_lsm({1, 4, 3}), parse("G[x' >= x]"));
    CHECK(v.kind == verdict_kind::false_);
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->seq == 2);  // the pre-state of the violating transition
    CHECK(v.wit->state == "x=4");
}

TEST_CASE("nested F inside G gives response semantics") {
    // every request (x == 1) is eventually answered (x == 0)
    CHECK(check_model(int_lsm({1, 2, 0, 1, 0}), parse("G[x == 1 -> F[x == 0]]")).kind ==
          verdict_kind::true_);
    verdict v = check_model(int_lsm({1, 0, 1, 2}), parse("G[x == 1 -> F[x == 0]]"));
    CHECK(v.kind == verdict_kind::false_);
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->seq == 3);  // the unanswered request
}

TEST_CASE("boolean skeletons over temporal leaves") {
    model m = int_lsm({1, 2, 3});
    CHECK(check_model(m, parse("G[x >= 1] && F[x == 2]")).kind == verdict_kind::true_);
    CHECK(check_model(m, parse("G[x > 1] || F[x == 2]")).kind == verdict_kind::true_);
    CHECK(check_model(m, parse("!G[x > 1]")).kind == verdict_kind::true_);
    CHECK(check_model(m, parse("!F[x == 9]")).kind == verdict_kind::true_);
    CHECK(check_model(m, parse("F[x == 9] -> G[x == 0]")).kind == verdict_kind::true_);
    verdict v = check_model(m, parse("G[x >= 1] && F[x == 9]"));
    CHECK(v.kind == verdict_kind::false_);
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->seq == 3);

    // a bare state predicate is not a property
    CHECK_THROWS_AS(check_model(m, parse("x == 1")), config_error);
    CHECK_THROWS_AS(check_model(m, parse("G[x == 1] + F[x == 2]")), config_error);
}

TEST_CASE("undefined components: skip by default, violate in strict mode") {
    // y is never written, x twice
    std::vector<attr_write> ws{{0, iv(1), 1}, {0, iv(2), 2}};
    model m = build_lsm({"x", "y"}, {value_tag::vt_int, value_tag::vt_int}, ws);

    verdict lax = check_model(m, parse("G[y == 5]"));
    CHECK(lax.kind == verdict_kind::true_);
    CHECK(lax.vacuous);  // every state was skipped
    CHECK(lax.detail == "vacuous");

    check_options strict;
    strict.strict_undefined = true;
    verdict v = check_model(m, parse("G[y == 5]"), strict);
    CHECK(v.kind == verdict_kind::false_);
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->seq == 1);
}

TEST_CASE("check stats count checked and skipped states") {
    std::vector<attr_write> ws{{0, iv(1), 1}, {1, iv(2), 2}, {0, iv(3), 3}};
    model m = build_lsm({"x", "y"}, {value_tag::vt_int, value_tag::vt_int}, ws);
    check_stats st;
    check_model(m, parse("G[x + y > 0]"), {}, &st);
    CHECK(st.states_checked == 2);  // states 2 and 3; state 1 lacks y
    CHECK(st.states_skipped == 1);
}

// --- distinct-state model ---------------------------------------------------------

TEST_CASE("DSM checks plain G bodies and rejects the rest") {
    std::vector<attr_write> ws{{0, iv(1), 1}, {0, iv(2), 2}, {0, iv(1), 3}};
    model m = build_dsm({"x"}, {value_tag::vt_int}, ws);
    CHECK(check_model(m, parse("G[x >= 1]")).kind == verdict_kind::true_);

    verdict v = check_model(m, parse("G[x < 2]"));
    CHECK(v.kind == verdict_kind::false_);
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->seq == 2);  // first time the violating vector appeared

    CHECK_THROWS_AS(check_model(m, parse("F[x == 2]")), config_error);
    CHECK_THROWS_AS(check_model(m, parse("P[x == 1 ~~> x == 2 ~~> x == 3]")), config_error);
    CHECK_THROWS_AS(check_model(m, parse("G[x == 1] && G[x == 2]")), config_error);
    CHECK_THROWS_AS(check_model(m, parse("G[F[x == 1]]")), config_error);
}

TEST_CASE("DSM primed bodies quantify over the successor set") {
    // 1 -> 2 -> 1 -> 2 -> 3: state 2 has successors {1, 3}
    std::vector<attr_write> ws{{0, iv(1), 1}, {0, iv(2), 2}, {0, iv(1), 3},
                               {0, iv(2), 4}, {0, iv(3), 5}};
    model m = build_dsm({"x"}, {value_tag::vt_int}, ws);

    // every successor of every state is between 1 and 3
    CHECK(check_model(m, parse("G[x' >= 1 && x' <= 3]")).kind == verdict_kind::true_);

    // x' == 1 fails at state 2 (one successor is 3); the witness is the
    // first seq of the offending edge
    verdict v = check_model(m, parse("G[x == 2 -> x' == 1]"));
    CHECK(v.kind == verdict_kind::false_);
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->state == "x=2");
    CHECK(v.wit->seq == 5);
}

TEST_CASE("DSM verdict agrees with LSM on unprimed G over random traces") {
    testsupport::rng r(8844);
    for (int it = 0; it < 120; ++it) {
        testsupport::tiny_universe u = testsupport::tiny_universe::make(r);
        auto ws = u.random_writes(r, 2, 50);
        expr_ptr body = u.random_g_body(r);
        expr_ptr prop = expr::make_g(body);
        model lsm = build_lsm(u.attrs, u.tags, ws);
        model dsm = build_dsm(u.attrs, u.tags, ws);
        verdict a = check_model(lsm, prop);
        verdict b = check_model(dsm, prop);
        CAPTURE(print_expr(prop));
        CHECK(a.kind == b.kind);
        if (a.kind == verdict_kind::false_) {
            REQUIRE(a.wit.has_value());
            REQUIRE(b.wit.has_value());
            CHECK(a.wit->seq == b.wit->seq);
            CHECK(a.wit->state == b.wit->state);
        }
    }
}

// --- decide_validity ---------------------------------------------------------------

TEST_CASE("decide_validity on handcrafted regions") {
    std::vector<std::string> attrs{"r"};
    std::vector<value_tag> tags{value_tag::vt_int};

    // constraint [1, inf): r >= 0 is valid, r == 0 is unsatisfiable, r == 1 mixed
    std::vector<constraint> cs{constraint::from_cmp(">=", iv(1), value_tag::vt_int)};
    CHECK(decide_validity(parse("r >= 0"), attrs, tags, cs) == tv::t);
    CHECK(decide_validity(parse("r == 0"), attrs, tags, cs) == tv::f);
    CHECK(decide_validity(parse("r == 1"), attrs, tags, cs) == tv::u);
    CHECK(decide_validity(parse("r >= 1"), attrs, tags, cs) == tv::t);
    CHECK(decide_validity(parse("r > 0 || r < 0"), attrs, tags, cs) == tv::t);

    // full domain
    std::vector<constraint> full{constraint::full(value_tag::vt_int)};
    CHECK(decide_validity(parse("r >= 0"), attrs, tags, full) == tv::u);
    CHECK(decide_validity(parse("r == r"), attrs, tags, full) == tv::t);
}

TEST_CASE("decide_validity over string predicates") {
    std::vector<std::string> attrs{"p"};
    std::vector<value_tag> tags{value_tag::vt_str};
    std::vector<constraint> e{constraint::singleton(value(std::string("E")))};
    CHECK(decide_validity(parse("p == \"E\""), attrs, tags, e) == tv::t);
    CHECK(decide_validity(parse("p != \"E\""), attrs, tags, e) == tv::f);
    std::vector<constraint> not_e{
        constraint::singleton(value(std::string("E"))).complement()};
    CHECK(decide_validity(parse("p == \"E\""), attrs, tags, not_e) == tv::f);
    CHECK(decide_validity(parse("p == \"T\""), attrs, tags, not_e) == tv::u);
}

TEST_CASE("decide_validity across multiple attributes") {
    std::vector<std::string> attrs{"w", "ww"};
    std::vector<value_tag> tags{value_tag::vt_int, value_tag::vt_int};
    // w in [0,1], ww == 0
    std::vector<constraint> cs{
        constraint::from_cmp(">=", iv(0), value_tag::vt_int)
            .intersect(constraint::from_cmp("<=", iv(1), value_tag::vt_int)),
        constraint::singleton(iv(0))};
    CHECK(decide_validity(parse("w <= 1 && ww == 0"), attrs, tags, cs) == tv::t);
    CHECK(decide_validity(parse("w == 1 -> ww == 0"), attrs, tags, cs) == tv::t);
    CHECK(decide_validity(parse("w == 0"), attrs, tags, cs) == tv::u);
    CHECK(decide_validity(parse("w + ww <= 1"), attrs, tags, cs) == tv::t);
    CHECK(decide_validity(parse("w + ww == 2"), attrs, tags, cs) == tv::f);
}

TEST_CASE("the abstract route gates on checkable shapes") {
    std::vector<std::string> attrs{"x", "xs"};
    std::vector<value_tag> tags{value_tag::vt_int, value_tag::vt_int_list};
    CHECK_NOTHROW(require_abstractly_checkable(parse("x == 1 || x > 5"), attrs, tags));
    CHECK_NOTHROW(require_abstractly_checkable(parse("!(x < 0) -> x >= 0"), attrs, tags));
    CHECK_THROWS_AS(require_abstractly_checkable(parse("x' == 1"), attrs, tags), config_error);
    CHECK_THROWS_AS(require_abstractly_checkable(parse("F[x == 1]"), attrs, tags), config_error);
    CHECK_THROWS_AS(require_abstractly_checkable(parse("x + x == 2"), attrs, tags), config_error);
    CHECK_THROWS_AS(require_abstractly_checkable(parse("xs#min > 0"), attrs, tags), config_error);
    CHECK_THROWS_AS(require_abstractly_checkable(parse("all(i, xs, i > 0)"), attrs, tags),
                    config_error);
}

TEST_CASE("decide_validity matches the probe oracle on random inputs") {
    testsupport::rng r(13579);
    int nontrivial = 0;
    for (int it = 0; it < 400; ++it) {
        testsupport::tiny_universe u = testsupport::tiny_universe::make(r);
        expr_ptr q = u.random_g_body(r);
        if (!contains_temporal(q) && !contains_primed(q)) {
            // random constraints: characteristic sets of random abstractions
            // applied to random domain values — exactly the shapes the
            // abstract checker feeds in
            auto fns = u.random_fns(r);
            std::vector<constraint> cs;
            for (size_t i = 0; i < u.attrs.size(); ++i) {
                const auto& dom = u.domain[i];
                component a =
                    apply_abstraction(fns[i], component(dom[r.pick(dom.size())]));
                cs.push_back(characteristic(fns[i], a));
            }
            tv got = decide_validity(q, u.attrs, u.tags, cs);
            tv want = testsupport::decide_validity_oracle(q, u.attrs, u.tags, cs);
            CAPTURE(print_expr(q));
            CHECK(got == want);
            if (want != tv::t) nontrivial++;
        } else {
            --it;
        }
    }
    CHECK(nontrivial > 40);  // the sample exercises F and U outcomes
}

// --- abstract-model checking ---------------------------------------------------------

TEST_CASE("ASM abstract checkability verdicts") {
    // bool(x == 0): abstract states T / F; body x >= 0 is not decidable
    // from them, x == 0 is
    std::vector<attr_write> ws{{0, iv(0), 1}, {0, iv(5), 2}, {0, iv(0), 3}};
    std::vector<abstraction_fn> fns{
        abstraction_fn::bool_pred("x", value_tag::vt_int, parse("x == 0"))};
    model m = build_asm({"x"}, {value_tag::vt_int}, fns, ws);

    // decidable and true on every reachable abstract state
    CHECK(check_model(m, parse("G[x == 0 || x != 0]")).kind == verdict_kind::true_);

    // undecidable: the ~0 state admits both x=1 (sat) and x=-1 (unsat)
    verdict u = check_model(m, parse("G[x >= 0]"));
    CHECK(u.kind == verdict_kind::incompatible);
    REQUIRE(u.wit.has_value());
    CHECK(u.wit->detail == "abstraction too coarse for: x >= 0");

    // decidably false at the ~0 state
    verdict f = check_model(m, parse("G[x == 0]"));
    CHECK(f.kind == verdict_kind::false_);
    REQUIRE(f.wit.has_value());
    CHECK(f.wit->seq == 2);
    CHECK(f.wit->state == "x=~0");

    // False dominates Incompatible
    verdict both = check_model(m, parse("G[x == 0 && x >= 0]"));
    CHECK(both.kind == verdict_kind::false_);
}

TEST_CASE("range abstraction validity") {
    std::vector<attr_write> ws{{0, value(2.0), 1}, {0, value(7.5), 2}};
    std::vector<abstraction_fn> fns{
        abstraction_fn::range("a", value_tag::vt_real, {0.0, 5.0, 10.0})};
    model m = build_asm({"a"}, {value_tag::vt_real}, fns, ws);
    CHECK(check_model(m, parse("G[a >= 0]")).kind == verdict_kind::true_);
    CHECK(check_model(m, parse("G[a < 10]")).kind == verdict_kind::true_);
    // the reachable bucket [5:10) straddles 7, so a < 7 is undecidable
    CHECK(check_model(m, parse("G[a < 7]")).kind == verdict_kind::incompatible);
    verdict f = check_model(m, parse("G[a < 2.5]"));
    // bucket [5:10) is decidably outside a < 2.5
    CHECK(f.kind == verdict_kind::false_);
    CHECK(f.wit->seq == 2);
}

TEST_CASE("ASM skips states with undefined referenced components") {
    std::vector<attr_write> ws{{0, iv(0), 1}, {1, iv(3), 2}};
    std::vector<abstraction_fn> fns{
        abstraction_fn::bool_pred("x", value_tag::vt_int, parse("x == 0")),
        abstraction_fn::bool_pred("y", value_tag::vt_int, parse("y == 0"))};
    model m = build_asm({"x", "y"}, {value_tag::vt_int, value_tag::vt_int}, fns, ws);

    // y is unknown in the warm-up state; lax mode skips it
    CHECK(check_model(m, parse("G[y != 0]")).kind == verdict_kind::true_);

    check_options strict;
    strict.strict_undefined = true;
    CHECK(check_model(m, parse("G[y != 0]"), strict).kind == verdict_kind::false_);

    // a body that references only x is checked at the warm-up state too
    CHECK(check_model(m, parse("G[x == 0]")).kind == verdict_kind::true_);
}

TEST_CASE("ASM F properties resolve on any satisfying reachable state") {
    std::vector<attr_write> ws{{0, iv(0), 1}, {0, iv(5), 2}};
    std::vector<abstraction_fn> fns{
        abstraction_fn::bool_pred("x", value_tag::vt_int, parse("x == 0"))};
    model m = build_asm({"x"}, {value_tag::vt_int}, fns, ws);
    verdict v = check_model(m, parse("F[x == 0]"));
    CHECK(v.kind == verdict_kind::true_);
    // existential witness must be decidably satisfying, not merely possible
    CHECK(check_model(m, parse("F[x == 7]")).kind == verdict_kind::incompatible);
}

TEST_CASE("vacuous abstract checks") {
    std::vector<abstraction_fn> fns{
        abstraction_fn::bool_pred("x", value_tag::vt_int, parse("x == 0")),
        abstraction_fn::bool_pred("y", value_tag::vt_int, parse("y == 0"))};
    model m = build_asm({"x", "y"}, {value_tag::vt_int, value_tag::vt_int}, fns,
                        std::vector<attr_write>{{0, iv(1), 1}});
    verdict v = check_model(m, parse("G[y == 0]"));
    CHECK(v.kind == verdict_kind::true_);
    CHECK(v.vacuous);
}

// --- path-model checking --------------------------------------------------------------

TEST_CASE("path model verdicts") {
    path_spec ps = path_spec::from_exprs(
        "p", "x", value_tag::vt_int,
        {parse("x == 1"), parse("x == 2"), parse("x == 3")});
    expr_ptr prop = parse("P[x == 1 ~~> x == 2 ~~> x == 3]");

    auto writes = [](std::initializer_list<int64_t> xs) {
        std::vector<attr_write> ws;
        uint64_t seq = 1;
        for (int64_t x : xs) ws.push_back({0, iv(x), seq++});
        return ws;
    };

    model good = build_path_model(ps, writes({1, 2, 3, 1, 2}), 0);
    CHECK(check_model(good, prop).kind == verdict_kind::true_);

    model bad = build_path_model(ps, writes({1, 2, 1, 3}), 0);
    verdict v = check_model(bad, prop);
    CHECK(v.kind == verdict_kind::false_);
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->seq == 4);

    // vacuous when f1 never appears
    model empty = build_path_model(ps, writes({2, 3, 2}), 0);
    verdict vac = check_model(empty, prop);
    CHECK(vac.kind == verdict_kind::true_);
    CHECK(vac.vacuous);

    // slots not covered by this path model are config errors
    CHECK_THROWS_AS(check_model(good, parse("P[x == 7 ~~> x == 2 ~~> x == 3]")), config_error);
}

// --- conjunct combination ----------------------------------------------------------------

TEST_CASE("combine_conjunct_verdicts precedence and witnesses") {
    auto v = [](verdict_kind k, uint64_t seq, bool vac = false) {
        verdict out;
        out.property = "part";
        out.kind = k;
        if (k == verdict_kind::false_ || k == verdict_kind::incompatible)
            out.wit = witness{seq, "s", "d"};
        out.vacuous = vac;
        return out;
    };

    // all true
    verdict t = combine_conjunct_verdicts("p", {v(verdict_kind::true_, 0),
                                                v(verdict_kind::true_, 0)});
    CHECK(t.kind == verdict_kind::true_);
    CHECK_FALSE(t.vacuous);

    // false wins over incompatible, earliest witness first
    verdict f = combine_conjunct_verdicts(
        "p", {v(verdict_kind::incompatible, 3), v(verdict_kind::false_, 9),
              v(verdict_kind::false_, 4)});
    CHECK(f.kind == verdict_kind::false_);
    CHECK(f.wit->seq == 4);
    CHECK(f.property == "p");
    CHECK(f.detail.find("failed conjunct") == 0);

    // incompatible beats true
    verdict i = combine_conjunct_verdicts(
        "p", {v(verdict_kind::true_, 0), v(verdict_kind::incompatible, 7)});
    CHECK(i.kind == verdict_kind::incompatible);

    // vacuous only when every part is vacuous
    verdict vac = combine_conjunct_verdicts(
        "p", {v(verdict_kind::true_, 0, true), v(verdict_kind::true_, 0, true)});
    CHECK(vac.vacuous);
    verdict notvac = combine_conjunct_verdicts(
        "p", {v(verdict_kind::true_, 0, true), v(verdict_kind::true_, 0, false)});
    CHECK_FALSE(notvac.vacuous);
}

TEST_CASE("check_normalized ties the pieces together") {
    model m = int_lsm({1, 0, 3});
    verdict v = check_normalized(m, "bounds", normalize(parse("G[x >= 1 && x <= 2]")));
    CHECK(v.kind == verdict_kind::false_);
    CHECK(v.property == "bounds");
    REQUIRE(v.wit.has_value());
    CHECK(v.wit->seq == 2);  // x=0 violates the first conjunct earliest
    CHECK(v.detail == "failed conjunct: G[x >= 1]");
}
