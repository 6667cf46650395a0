#include <doctest.h>

#include <algorithm>

#include "aspine/program.hpp"
#include "support/gen.hpp"

using namespace aspine;

TEST_SUITE("program") {

TEST_CASE("parses a two-rule choice program") {
    GroundProgram p = parse_program("a :- not b.\nb :- not a.");
    CHECK(p.atom_count() == 2);
    CHECK(p.rules().size() == 2);
    CHECK(p.constraints().empty());
    CHECK(p.name(1) == "a");
    CHECK(p.name(2) == "b");
    CHECK(p.rules()[0].head == 1);
    CHECK(p.rules()[0].pos_body.empty());
    CHECK(p.rules()[0].neg_body == std::vector<AtomId>{2});
}

TEST_CASE("parses facts, rules and constraints") {
    GroundProgram p = parse_program("a.\nb :- a, not c.\n:- b, c.");
    CHECK(p.atom_count() == 3);
    REQUIRE(p.rules().size() == 2);
    REQUIRE(p.constraints().size() == 1);
    CHECK(p.rules()[0].is_fact());
    CHECK(p.rules()[1].head == p.find("b"));
    CHECK(p.rules()[1].pos_body == std::vector<AtomId>{p.find("a")});
    CHECK(p.rules()[1].neg_body == std::vector<AtomId>{p.find("c")});
    CHECK(p.constraints()[0].pos_body == std::vector<AtomId>{p.find("b"), p.find("c")});
}

TEST_CASE("parses a self-blocking rule") {
    GroundProgram p = parse_program("a :- not a.");
    CHECK(p.atom_count() == 1);
    REQUIRE(p.rules().size() == 1);
    CHECK(p.rules()[0].head == 1);
    CHECK(p.rules()[0].neg_body == std::vector<AtomId>{1});
}

TEST_CASE("interns atoms in first-occurrence order") {
    GroundProgram p = parse_program("x :- y, not z.\ny.\n");
    CHECK(p.find("x") == 1);
    CHECK(p.find("y") == 2);
    CHECK(p.find("z") == 3);
}

TEST_CASE("collapses duplicate body literals") {
    GroundProgram p = parse_program("a :- b, b, not c, not c.");
    CHECK(p.rules()[0].pos_body.size() == 1);
    CHECK(p.rules()[0].neg_body.size() == 1);
}

TEST_CASE("handles comments, blanks and parenthesised names") {
    GroundProgram p = parse_program(
        "% a comment line\n"
        "\n"
        "at(1,2) :- step(1), not wall(1,2).  % trailing comment\n");
    CHECK(p.atom_count() == 3);
    CHECK(p.find("at(1,2)") == 1);
    CHECK(p.find("wall(1,2)") == 3);
}

TEST_CASE("reports syntax errors with their line number") {
    CHECK_THROWS_AS(parse_program("a.\nb :- \nc."), ParseError);
    try {
        parse_program("a.\nb :- ,c.\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_program("a. b."), ParseError);       // one statement per line
    CHECK_THROWS_AS(parse_program("a :- not ."), ParseError);  // keyword without atom
    CHECK_THROWS_AS(parse_program("a :- b"), ParseError);      // missing dot
}

TEST_CASE("tp_step on facts and chains") {
    GroundProgram p = parse_program("a.\nb :- a.");
    CHECK(tp_step(p, std::vector<AtomId>{}) == std::vector<AtomId>{1});
    CHECK(tp_step(p, std::vector<AtomId>{1}) == std::vector<AtomId>{1, 2});
}

TEST_CASE("tp_step respects negative bodies") {
    GroundProgram p = parse_program("a :- not b.\nb :- not a.");
    // With a in the interpretation, only a's rule fires.
    CHECK(tp_step(p, std::vector<AtomId>{1}) == std::vector<AtomId>{1});
}

TEST_CASE("tp_step is monotone on negation-free programs") {
    testing::SplitMix64 rng(0x5eed0001);
    for (int iter = 0; iter < 200; ++iter) {
        testing::ProgramShape shape;
        shape.max_atoms = 8;
        shape.max_rules = 12;
        shape.max_constraints = 0;
        shape.negation = false;
        GroundProgram p = testing::random_program(rng, shape);
        std::vector<AtomId> small, large;
        for (AtomId a = 1; a <= p.atom_count(); ++a) {
            if (rng.chance(50)) {
                large.push_back(a);
                if (rng.chance(60)) small.push_back(a);
            }
        }
        auto ti = tp_step(p, small);
        auto tj = tp_step(p, large);
        CHECK(std::includes(tj.begin(), tj.end(), ti.begin(), ti.end()));
    }
}

TEST_CASE("print/parse round-trip yields an isomorphic program") {
    // Atom ids may be relabelled (the parse interns in first-occurrence
    // order), so rules are compared through their atom names.
    testing::SplitMix64 rng(0x5eed0002);
    auto names = [](const GroundProgram& prog, const std::vector<AtomId>& atoms) {
        std::vector<std::string> out;
        for (AtomId a : atoms) out.push_back(prog.name(a));
        std::sort(out.begin(), out.end());
        return out;
    };
    for (int iter = 0; iter < 100; ++iter) {
        GroundProgram p = testing::random_program(rng);
        GroundProgram q = parse_program(print_program(p));
        // Atoms that appear in no statement vanish; the rules survive.
        REQUIRE(q.rules().size() == p.rules().size());
        REQUIRE(q.constraints().size() == p.constraints().size());
        for (std::size_t i = 0; i < p.rules().size(); ++i) {
            CHECK(q.name(q.rules()[i].head) == p.name(p.rules()[i].head));
            CHECK(names(q, q.rules()[i].pos_body) == names(p, p.rules()[i].pos_body));
            CHECK(names(q, q.rules()[i].neg_body) == names(p, p.rules()[i].neg_body));
        }
        // A second round-trip is a fixpoint: ids are now canonical.
        CHECK(print_program(parse_program(print_program(q))) == print_program(q));
    }
}

TEST_CASE("rules_of lists exactly the rules with that head") {
    testing::SplitMix64 rng(0x5eed0003);
    for (int iter = 0; iter < 50; ++iter) {
        GroundProgram p = testing::random_program(rng);
        std::size_t listed = 0;
        for (AtomId a = 1; a <= p.atom_count(); ++a) {
            for (std::uint32_t ri : p.rules_of(a)) CHECK(p.rules()[ri].head == a);
            listed += p.rules_of(a).size();
        }
        CHECK(listed == p.rules().size());
    }
}

TEST_CASE("validate flags undefined atoms, inconsistent bodies, empty programs") {
    GroundProgram p1 = parse_program("b :- a.");
    auto d1 = validate(p1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0] == "atom a has no rules");

    GroundProgram p2 = parse_program("a :- b, not b.");
    auto d2 = validate(p2);
    CHECK(std::find(d2.begin(), d2.end(), "rule 1 body is inconsistent") != d2.end());

    GroundProgram p3 = parse_program("a.");
    CHECK(validate(p3).empty());

    GroundProgram p4 = parse_program("");
    REQUIRE(validate(p4).size() == 1);
    CHECK(validate(p4)[0] == "empty program");
}

}  // TEST_SUITE
