#include "certiplan/certificate.h"

#include "fixtures.h"

#include <doctest.h>

#include <random>

using namespace certiplan;
using certiplan::testing::c;

namespace {

std::string small_cert_text() {
    return "pbcert 1\n"
           "bound 2\n"
           "declare ge 0 2\n"
           "declare delta 1\n"
           "declare mmge m1 2\n"
           "circuit\n"
           "reif xs_0 : 1 xv_p 1 xge_0 >= 2\n"
           "reif xs_1 : 1 xs_0 >= 1\n"
           "output xs_1\n"
           "proof init\n"
           "rup 1 ~xrI 1 xge_1 1 xs_1 >= 1\n"
           "qed 9\n"
           "proof goal\n"
           "a ~xv_p\n"
           "lin 1 9 2 10\n"
           "red 1 xs_0 1 ~xs_0 >= 0\n"
           "  a xv_p\n"
           "  derived 12\n"
           "end\n"
           "qed 11\n"
           "proof ind\n"
           "sat 3\n"
           "div 4 2\n"
           "qed 2\n";
}

} // namespace

TEST_CASE("serialize and parse round trip byte for byte") {
    VarPool pool;
    Certificate cert = parse_certificate(small_cert_text(), pool);
    std::string once = serialize(cert, pool);
    VarPool pool2;
    Certificate cert2 = parse_certificate(once, pool2);
    CHECK(serialize(cert2, pool2) == once);
    CHECK(cert.bound == 2);
    CHECK(cert.decls.mm == std::set<long long>{-1, 2});
    REQUIRE(cert.circuit.size() == 2);
    CHECK(cert.goal_proof.steps.size() == 3);
    CHECK(cert.goal_proof.steps[2].kind == ProofStep::Kind::Red);
    CHECK(cert.goal_proof.steps[2].sub.size() == 1);
    CHECK_FALSE(cert.goal_proof.steps[2].sub_contradiction);
}

TEST_CASE("parse errors carry line numbers") {
    VarPool pool;
    // malformed lin arity
    std::string bad = small_cert_text();
    size_t at = bad.find("lin 1 9 2 10");
    bad.replace(at, 12, "lin 1 9 2");
    try {
        parse_certificate(bad, pool);
        FAIL("expected a parse error");
    } catch (const CertParseError &e) {
        CHECK(e.line == 15);
    }

    // circuit head reuse
    std::string dup = small_cert_text();
    at = dup.find("reif xs_1");
    dup.replace(at, 9, "reif xs_0");
    CHECK_THROWS_AS(parse_certificate(dup, pool), CertParseError);

    // unknown mnemonic
    std::string unk = small_cert_text();
    at = unk.find("sat 3");
    unk.replace(at, 5, "zap 3");
    CHECK_THROWS_AS(parse_certificate(unk, pool), CertParseError);

    // declarations must ascend
    std::string decl = small_cert_text();
    at = decl.find("declare ge 0 2");
    decl.replace(at, 14, "declare ge 2 0");
    CHECK_THROWS_AS(parse_certificate(decl, pool), CertParseError);
}

TEST_CASE("parser survives random byte flips") {
    std::string base = small_cert_text();
    std::mt19937_64 rng(99);
    for (int round = 0; round < 300; ++round) {
        std::string fuzzed = base;
        int flips = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < flips; ++i)
            fuzzed[rng() % fuzzed.size()] = static_cast<char>(rng() % 96 + 32);
        VarPool pool;
        try {
            Certificate cert = parse_certificate(fuzzed, pool);
            (void)serialize(cert, pool); // parsed fine; must serialize fine too
        } catch (const std::exception &) {
            // rejection is acceptable; crashing is not
        }
    }
    CHECK(true);
}
