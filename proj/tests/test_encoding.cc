#include "certiplan/encoding.h"

#include "enumerate.h"
#include "fixtures.h"

#include <doctest.h>

using namespace certiplan;
using certiplan::testing::chain_task;
using certiplan::testing::models_of;

namespace {

LazyCostDecls chain_decls() {
    LazyCostDecls d;
    d.ge = {0, 1, 3};
    d.delta = {1, 2};
    return d;
}

size_t count_family(const TaskEncoding &enc, ReifFamily f) {
    size_t n = 0;
    for (const TaggedReif &tr : enc.reifs)
        if (tr.key.family == f)
            ++n;
    return n;
}

} // namespace

TEST_CASE("canonical encoding counts for the chain task") {
    Task t = chain_task();
    VarPool pool;
    VarCatalog cat(pool, t, 3);
    TaskEncoding enc = build_encoding(t, cat, chain_decls());
    CHECK(count_family(enc, ReifFamily::Init) == 1);
    CHECK(count_family(enc, ReifFamily::Goal) == 1);
    // each declared difference expands to a conjunction head and two
    // direction reifications, mirroring the frame triple
    CHECK(count_family(enc, ReifFamily::DeltaPair) == 2);
    CHECK(count_family(enc, ReifFamily::DeltaGe) == 2);
    CHECK(count_family(enc, ReifFamily::DeltaLe) == 2);
    CHECK(count_family(enc, ReifFamily::Ge) == 3);
    CHECK(count_family(enc, ReifFamily::Gep) == 3);
    CHECK(count_family(enc, ReifFamily::Eq) == 2);
    CHECK(count_family(enc, ReifFamily::Geq) == 2);
    CHECK(count_family(enc, ReifFamily::Leq) == 2);
    CHECK(count_family(enc, ReifFamily::Act) == 2);
    CHECK(count_family(enc, ReifFamily::Trans) == 1);
    CHECK(enc.partition(PART_TRANS).size() == 21);
    // the action constraint degree is 2 + |pre| + |V|
    for (const TaggedReif &tr : enc.reifs)
        if (tr.key.family == ReifFamily::Act) {
            const Action &a = t.actions[static_cast<size_t>(tr.key.param)];
            CHECK(tr.reif.body.degree() ==
                  2 + static_cast<long long>(a.pre.size()) + static_cast<long long>(t.num_vars()));
        }
}

TEST_CASE("bound zero uses a single cost bit and a forced ge_0") {
    Task t = chain_task();
    VarPool pool;
    VarCatalog cat(pool, t, 0);
    CHECK(cat.bit_count() == 1);
    LazyCostDecls d;
    d.ge = {0};
    d.delta = {1, 2};
    TaskEncoding enc = build_encoding(t, cat, d);
    for (const TaggedReif &tr : enc.reifs)
        if (tr.key.family == ReifFamily::Ge) {
            CHECK(tr.reif.body.empty_sum());
            CHECK(tr.reif.body.degree() == 0);
            auto cons = expand_reification(tr.reif);
            REQUIRE(cons.size() == 2);
            // backward direction forces the head
            CHECK(cons[1] == normalize({RawTerm{1, pos(cat.ge(0))}}, 1));
        }
}

TEST_CASE("encoding validation errors") {
    Task t = chain_task();
    VarPool pool;
    VarCatalog cat(pool, t, 3);
    LazyCostDecls d = chain_decls();
    d.delta.erase(2);
    CHECK_THROWS_AS(build_encoding(t, cat, d), EncodingError);
    LazyCostDecls d2 = chain_decls();
    d2.ge.erase(3); // bound threshold missing
    CHECK_THROWS_AS(build_encoding(t, cat, d2), EncodingError);
}

TEST_CASE("difference reification semantics by enumeration") {
    Task t; // no state variables needed
    VarPool pool;
    VarCatalog cat(pool, t, 2); // two cost bits
    REQUIRE(cat.bit_count() == 2);
    for (long long k : {0LL, 1LL, 2LL}) {
        LazyCostDecls d;
        d.ge = {0, 2};
        d.delta = {k};
        TaskEncoding enc = build_encoding(t, cat, d);
        std::vector<PBConstraint> all;
        for (const TaggedReif &tr : enc.reifs)
            if (tr.key.family == ReifFamily::DeltaPair || tr.key.family == ReifFamily::DeltaGe ||
                tr.key.family == ReifFamily::DeltaLe)
                if (tr.key.param == k)
                    for (const PBConstraint &c : expand_reification(tr.reif))
                        all.push_back(c);
        std::vector<VarId> vars{cat.cost_bit(0),  cat.cost_bit(1),  cat.cost_bit_primed(0),
                                cat.cost_bit_primed(1), cat.delta(k), cat.delta_ge(k),
                                cat.delta_le(k)};
        for (uint32_t bits : models_of(all, vars)) {
            long long c = ((bits >> 0) & 1) + 2 * ((bits >> 1) & 1);
            long long cp = ((bits >> 2) & 1) + 2 * ((bits >> 3) & 1);
            bool delta_set = ((bits >> 4) & 1) != 0;
            CHECK(delta_set == (cp - c == k));
        }
    }
}

TEST_CASE("frame reification semantics by enumeration") {
    Task t = parse_task("vars p\ninit\ngoal\n");
    VarPool pool;
    VarCatalog cat(pool, t, 1);
    LazyCostDecls d;
    d.ge = {0, 1};
    TaskEncoding enc = build_encoding(t, cat, d);
    std::vector<PBConstraint> all;
    for (const TaggedReif &tr : enc.reifs)
        if (tr.key.family == ReifFamily::Eq || tr.key.family == ReifFamily::Geq ||
            tr.key.family == ReifFamily::Leq)
            for (const PBConstraint &c : expand_reification(tr.reif))
                all.push_back(c);
    std::vector<VarId> vars{cat.state(0), cat.state_primed(0), cat.eq(0), cat.geq(0), cat.leq(0)};
    auto models = models_of(all, vars);
    CHECK(models.size() == 4); // every (v, v') combination extends uniquely
    for (uint32_t bits : models) {
        bool v = bits & 1, vp = (bits >> 1) & 1, eq = (bits >> 2) & 1;
        CHECK(eq == (v == vp));
    }
}

TEST_CASE("action selector forces its conjunction") {
    Task t = parse_task("vars p q\ninit\ngoal q\n"
                        "action a2 cost 0\n  pre p\n  add q\n  del\nend\n");
    VarPool pool;
    VarCatalog cat(pool, t, 1);
    LazyCostDecls dls;
    dls.ge = {0, 1};
    dls.delta = {0};
    TaskEncoding enc = build_encoding(t, cat, dls);
    // collect the transition partition minus the selector disjunction, whose
    // head would widen the enumeration
    std::vector<PBConstraint> all;
    for (const TaggedReif &tr : enc.reifs) {
        if (!(tr.partitions & (PART_TRANS | PART_GE)))
            continue;
        if (tr.key.family == ReifFamily::Trans)
            continue;
        for (const PBConstraint &c : expand_reification(tr.reif))
            all.push_back(c);
    }
    // under xa_a2 = 1, every model satisfies pre/add/frame and the delta
    std::vector<RawTerm> sel{RawTerm{1, pos(cat.action(0))}};
    all.push_back(normalize(sel, 1));
    std::vector<VarId> vars;
    for (int v = 0; v < 2; ++v) {
        vars.push_back(cat.state(v));
        vars.push_back(cat.state_primed(v));
        vars.push_back(cat.eq(v));
        vars.push_back(cat.geq(v));
        vars.push_back(cat.leq(v));
    }
    for (int i = 0; i < cat.bit_count(); ++i) {
        vars.push_back(cat.cost_bit(i));
        vars.push_back(cat.cost_bit_primed(i));
    }
    vars.push_back(cat.action(0));
    vars.push_back(cat.delta(0));
    vars.push_back(cat.delta_ge(0));
    vars.push_back(cat.delta_le(0));
    vars.push_back(cat.ge(0));
    vars.push_back(cat.ge(1));
    vars.push_back(cat.gep(0));
    vars.push_back(cat.gep(1));
    REQUIRE(vars.size() <= 20);
    size_t checked = 0;
    for (uint32_t bits : models_of(all, vars)) {
        auto val = [&](VarId v) {
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == v)
                    return ((bits >> i) & 1u) != 0;
            return false;
        };
        if (!val(cat.action(0)))
            continue;
        ++checked;
        CHECK(val(cat.state(0)));        // pre p
        CHECK(val(cat.state_primed(1))); // add q'
        CHECK(val(cat.delta(0)));
        CHECK(val(cat.eq(0)));
        CHECK_FALSE(val(cat.gep(1))); // bound literal: successor cost below 1
        // the frame variable keeps its value
        CHECK(val(cat.state_primed(0)) == val(cat.state(0)));
    }
    CHECK(checked > 0);
}

TEST_CASE("placeholder resolutions clip into the bound") {
    Task t = chain_task();
    VarPool pool;
    VarCatalog cat(pool, t, 5);
    LazyCostDecls d;
    d.ge = {0, 3, 5};
    d.mm = {-2, 3, 9};
    auto out = resolve_placeholders(cat, d);
    REQUIRE(out.size() == 6);
    CHECK(pool.name(out[0].reif.var) == "xmmge_m2");
    CHECK(out[0].reif.body == normalize({RawTerm{1, pos(cat.ge(0))}}, 1));
    CHECK(pool.name(out[2].reif.var) == "xmmge_3");
    CHECK(out[2].reif.body == normalize({RawTerm{1, pos(cat.ge(3))}}, 1));
    CHECK(pool.name(out[4].reif.var) == "xmmge_9");
    CHECK(out[4].reif.body == normalize({RawTerm{1, pos(cat.ge(5))}}, 1));
    d.ge.erase(3);
    CHECK_THROWS_AS(resolve_placeholders(cat, d), EncodingError);
}

TEST_CASE("encoding emission is deterministic") {
    Task t = chain_task();
    auto dump = [&] {
        VarPool pool;
        VarCatalog cat(pool, t, 3);
        TaskEncoding enc = build_encoding(t, cat, chain_decls());
        std::string out;
        for (const TaggedReif &tr : enc.reifs)
            out += pool.name(tr.reif.var) + ":" + constraint_to_text(tr.reif.body, pool) + "\n";
        return out;
    };
    CHECK(dump() == dump());
}

TEST_CASE("priming maps namespaces and rejects forbidden ones") {
    Task t = chain_task();
    VarPool pool;
    VarCatalog cat(pool, t, 3);
    PBConstraint x = normalize({RawTerm{1, pos(cat.state(0))}, RawTerm{1, pos(cat.ge(2))}}, 1);
    PBConstraint primed = prime_constraint(cat, x);
    CHECK(constraint_to_text(primed, pool) == "1 xvp_p 1 xgep_2 >= 1");
    CHECK_THROWS(prime_constraint(cat, normalize({RawTerm{1, pos(cat.delta(1))}}, 1)));
    // circuit heads get a fresh twin
    VarId head = cat.fresh_heur_head();
    Reification r{head, ReifDir::Iff, x};
    Reification rp = prime_reification(cat, r);
    CHECK(pool.name(rp.var) == pool.name(head) + "_p");
}

TEST_CASE("lemma scopes assemble in canonical order") {
    Task t = chain_task();
    VarPool pool;
    VarCatalog cat(pool, t, 3);
    LazyCostDecls d = chain_decls();
    d.mm = {1};
    ScopeLayout init = build_lemma_scope(t, cat, d, {}, LemmaKind::Init);
    // Eq1 contributes two constraints at the very beginning
    CHECK(init.id_of(ConstraintRef{ReifKey{ReifFamily::Init, 0}, true}) == 1);
    CHECK(init.id_of(ConstraintRef{ReifKey{ReifFamily::Init, 0}, false}) == 2);
    CHECK_FALSE(init.has(ConstraintRef{ReifKey{ReifFamily::Goal, 0}, true}));
    CHECK(init.has(ConstraintRef{ReifKey{ReifFamily::MmGe, 1}, true}));

    ScopeLayout ind = build_lemma_scope(t, cat, d, {}, LemmaKind::Ind);
    CHECK_FALSE(ind.has(ConstraintRef{ReifKey{ReifFamily::Init, 0}, true}));
    CHECK(ind.has(ConstraintRef{ReifKey{ReifFamily::Act, 0}, true}));
    CHECK_FALSE(ind.has(ConstraintRef{ReifKey{ReifFamily::Act, 0}, false}));
    CHECK(ind.has(ConstraintRef{ReifKey{ReifFamily::MmGep, 1}, false}));
}
