#include <doctest.h>

#include <algorithm>

#include "aspine/oracle.hpp"
#include "aspine/program.hpp"
#include "support/gen.hpp"

using namespace aspine;

namespace {

std::vector<std::vector<AtomId>> family_of(const std::string& text) {
    return enumerate_answer_sets(parse_program(text));
}

// Independent route for cross-checking enumerate_answer_sets: loop over
// every subset with the public set-based reduct + least_model.
std::vector<std::vector<AtomId>> enumerate_by_definition(const GroundProgram& p) {
    std::vector<std::vector<AtomId>> family;
    const AtomId n = p.atom_count();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<AtomId> m;
        for (AtomId a = 1; a <= n; ++a)
            if (mask & (1ull << (a - 1))) m.push_back(a);
        auto lm = least_model(reduct(p, m));
        if (lm && *lm == m) family.push_back(m);
    }
    std::sort(family.begin(), family.end());
    return family;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("reduct keeps or deletes rules by their negative body") {
    GroundProgram p = parse_program("a :- not b.");
    ReductProgram r1 = reduct(p, std::vector<AtomId>{});
    REQUIRE(r1.rules.size() == 1);
    CHECK(r1.rules[0].head == p.find("a"));
    CHECK(r1.rules[0].pos_body.empty());
    CHECK(r1.rules[0].neg_body.empty());

    ReductProgram r2 = reduct(p, std::vector<AtomId>{p.find("b")});
    CHECK(r2.rules.empty());

    GroundProgram loop = parse_program("p :- q.\nq :- p.");
    for (std::vector<AtomId> m : {std::vector<AtomId>{}, std::vector<AtomId>{1, 2}}) {
        ReductProgram r = reduct(loop, m);
        CHECK(r.rules.size() == 2);
        CHECK(r.rules[0].pos_body == loop.rules()[0].pos_body);
    }
}

TEST_CASE("least_model iterates consequences and checks constraints") {
    GroundProgram p1 = parse_program("a.\nb :- a.");
    auto lm1 = least_model(reduct(p1, std::vector<AtomId>{}));
    REQUIRE(lm1.has_value());
    CHECK(*lm1 == std::vector<AtomId>{1, 2});

    GroundProgram p2 = parse_program("p :- q.\nq :- p.");
    auto lm2 = least_model(reduct(p2, std::vector<AtomId>{}));
    REQUIRE(lm2.has_value());
    CHECK(lm2->empty());

    GroundProgram p3 = parse_program("a.\n:- a.");
    CHECK(!least_model(reduct(p3, std::vector<AtomId>{1})).has_value());
}

TEST_CASE("enumerates answer sets of the textbook programs") {
    auto even = family_of("a :- not b.\nb :- not a.");
    REQUIRE(even.size() == 2);
    CHECK(even[0] == std::vector<AtomId>{1});
    CHECK(even[1] == std::vector<AtomId>{2});

    auto loop = family_of("p :- q.\nq :- p.");
    REQUIRE(loop.size() == 1);
    CHECK(loop[0].empty());

    CHECK(family_of("a.\n:- a.").empty());
}

TEST_CASE("answer sets are models and consequence fixpoints") {
    testing::SplitMix64 rng(0x0aac1e01);
    for (int iter = 0; iter < 120; ++iter) {
        testing::ProgramShape shape;
        shape.max_atoms = 8;
        shape.max_rules = 14;
        GroundProgram p = testing::random_program(rng, shape);
        for (const auto& m : enumerate_answer_sets(p)) {
            CHECK(is_answer_set(p, m));
            CHECK(tp_step(p, m) == m);
        }
    }
}

TEST_CASE("fast enumeration agrees with the definitional route") {
    testing::SplitMix64 rng(0x0aac1e02);
    for (int iter = 0; iter < 80; ++iter) {
        testing::ProgramShape shape;
        shape.max_atoms = 6;
        shape.max_rules = 10;
        shape.max_constraints = 3;
        GroundProgram p = testing::random_program(rng, shape);
        CHECK(enumerate_answer_sets(p) == enumerate_by_definition(p));
    }
}

TEST_CASE("rejects programs beyond the enumeration bound") {
    GroundProgram p;
    for (int i = 0; i < 23; ++i) p.intern("x" + std::to_string(i));
    CHECK_THROWS_AS(enumerate_answer_sets(p), std::invalid_argument);
}

}  // TEST_SUITE
