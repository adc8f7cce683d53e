// SPDX-License-Identifier: Apache-2.0
//
// Cross-route agreement: the same property checked along independent
// evaluation routes (concrete linear walk, merged graph, abstract graph,
// probe enumeration) must never contradict itself.

#include <doctest.h>

#include "fsmrv/checker.hpp"
#include "fsmrv/model.hpp"
#include "fsmrv/prop/ast.hpp"
#include "support/oracles.hpp"

using namespace fsmrv;

TEST_CASE("DSM and LSM agree on unprimed G over random traces") {
    testsupport::rng r(60601);
    int falses = 0, trues = 0;
    for (int it = 0; it < 200; ++it) {
        testsupport::tiny_universe u = testsupport::tiny_universe::make(r);
        std::vector<attr_write> ws = u.random_writes(r, 2, 60);
        expr_ptr body = u.random_g_body(r);
        expr_ptr p = expr::make_g(body);

        model lsm = build_lsm(u.attrs, u.tags, ws);
        model dsm = build_dsm(u.attrs, u.tags, ws);
        verdict vl = check_lsm(lsm, p);
        verdict vd = check_dsm(dsm, p);

        CAPTURE(print_expr(p));
        CHECK(vl.kind == vd.kind);
        if (vl.kind == verdict_kind::false_) {
            ++falses;
            REQUIRE(vl.wit);
            REQUIRE(vd.wit);
            CHECK(vl.wit->seq == vd.wit->seq);
        } else {
            ++trues;
        }
    }
    // the sample must exercise both outcomes to mean anything
    CHECK(falses > 20);
    CHECK(trues > 20);
}

TEST_CASE("a decided abstract verdict is always the concrete verdict") {
    testsupport::rng r(70707);
    int decided = 0, incompat = 0;
    for (int it = 0; it < 200; ++it) {
        testsupport::tiny_universe u = testsupport::tiny_universe::make(r);
        std::vector<attr_write> ws = u.random_writes(r, 2, 50);
        std::vector<abstraction_fn> fns = u.random_fns(r);
        expr_ptr body = u.random_g_body(r);
        expr_ptr p = expr::make_g(body);

        model am = build_asm(u.attrs, u.tags, fns, ws);
        model lsm = build_lsm(u.attrs, u.tags, ws);

        verdict va;
        try {
            va = check_asm(am, p);
        } catch (const config_error&) {
            continue;  // body not abstractly checkable under these tags
        }
        verdict vl = check_lsm(lsm, p);

        CAPTURE(print_expr(p));
        if (va.kind == verdict_kind::incompatible) {
            ++incompat;  // abstraction too coarse; no claim to compare
            continue;
        }
        ++decided;
        CHECK(va.kind == vl.kind);
    }
    CHECK(decided > 60);
    CHECK(incompat > 10);
}

TEST_CASE("decide_validity matches exhaustive probing on random regions") {
    testsupport::rng r(81818);
    int nontrivial = 0;
    for (int it = 0; it < 300; ++it) {
        testsupport::tiny_universe u = testsupport::tiny_universe::make(r);
        std::vector<abstraction_fn> fns = u.random_fns(r);
        expr_ptr body = u.random_g_body(r);

        // pick one abstract cell per attribute via a random concrete value
        std::vector<constraint> cs;
        for (size_t a = 0; a < u.attrs.size(); ++a) {
            const value& v = u.domain[a][size_t(r.range(0, int64_t(u.domain[a].size()) - 1))];
            component abs = apply_abstraction(fns[a], component(v));
            cs.push_back(characteristic(fns[a], abs));
        }

        tv got;
        try {
            got = decide_validity(body, u.attrs, u.tags, cs);
        } catch (const config_error&) {
            continue;
        }
        tv want = testsupport::decide_validity_oracle(body, u.attrs, u.tags, cs);
        CAPTURE(print_expr(body));
        CHECK(got == want);
        if (want != tv::t) ++nontrivial;
    }
    CHECK(nontrivial > 40);
}
