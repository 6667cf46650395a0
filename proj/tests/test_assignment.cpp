#include <doctest.h>

#include <algorithm>

#include "aspine/assignment.hpp"
#include "support/gen.hpp"

using namespace aspine;

namespace {

std::vector<std::uint64_t> words(std::initializer_list<std::uint64_t> ws) { return ws; }

}  // namespace

TEST_SUITE("assignment") {

TEST_CASE("assign is a compare-and-set per atom") {
    Assignment a(4, 1);
    a.push_decision(Lit::pos(4));  // open level 2
    CHECK(a.decision_level() == 2);

    CHECK(a.assign_propagated(Lit::pos(1), 2, words({0b10}), false, 7) == AssignResult::newly_set);
    CHECK(a.cell(1) == 2);
    CHECK(a.assign_propagated(Lit::pos(1), 2, words({0}), false, 8) == AssignResult::agreed);
    CHECK(a.cell(1) == 2);
    CHECK(a.reason(1).antecedent == 7);  // the losing assign mutated nothing
    CHECK(a.assign_propagated(Lit::neg(1), 2, words({0}), false, 9) == AssignResult::conflict);
    CHECK(a.cell(1) == 2);

    CHECK(a.assign_unit(Lit::neg(2)) == AssignResult::newly_set);
    CHECK(a.cell(2) == -1);
    CHECK(a.has(Lit::neg(2)));
    CHECK(!a.has(Lit::pos(2)));
}

TEST_CASE("signed cells encode value and level") {
    Assignment a(3, 1);
    a.assign_unit(Lit::pos(1));
    a.push_decision(Lit::pos(2));
    a.assign_propagated(Lit::neg(3), 2, words({0b10}), false, 0);
    CHECK(a.cell(1) == 1);
    CHECK(a.cell(2) == 2);
    CHECK(a.cell(3) == -2);
    CHECK(a.level_of(3) == 2);
}

TEST_CASE("decisions carry exactly their level bit") {
    Assignment a(3, 2);
    a.push_decision(Lit::pos(1));  // level 2 -> bit 1
    a.push_decision(Lit::pos(2));  // level 3 -> bit 2
    CHECK(bitmap_levels(a.deps().of(1)) == std::vector<std::uint32_t>{2});
    CHECK(bitmap_levels(a.deps().of(2)) == std::vector<std::uint32_t>{3});
    CHECK(a.level_decision(2) == Lit::pos(1));
    CHECK(a.level_decision(3) == Lit::pos(2));
}

TEST_CASE("backjump erases everything above the target") {
    Assignment a(3, 1);
    a.assign_unit(Lit::pos(1));
    a.push_decision(Lit::pos(2));
    a.push_decision(Lit::neg(3));
    REQUIRE(a.trail().size() == 3);
    a.backjump(1);
    CHECK(a.decision_level() == 1);
    CHECK(a.trail().size() == 1);
    CHECK(a.has(Lit::pos(1)));
    CHECK(a.unassigned(2));
    CHECK(a.unassigned(3));
    CHECK(!bitmap_any(a.deps().of(2)));
    CHECK(a.reason(2).kind == Reason::none);
    CHECK(!a.is_total());
}

TEST_CASE("is_total counts every atom") {
    Assignment a(2, 1);
    CHECK(!a.is_total());
    a.assign_unit(Lit::pos(1));
    a.assign_unit(Lit::neg(2));
    CHECK(a.is_total());

    Assignment empty(0, 1);
    CHECK(empty.is_total());
}

TEST_CASE("completion assignments depend on every decision level") {
    Assignment a(4, 1);
    a.push_decision(Lit::pos(1));
    a.push_decision(Lit::pos(2));
    a.assign_completion(Lit::neg(3));
    CHECK(a.cell(3) == -3);
    CHECK(bitmap_levels(a.deps().of(3)) == std::vector<std::uint32_t>{2, 3});
    CHECK(a.reason(3).kind == Reason::completion);
}

TEST_CASE("deps overflow is sticky beyond the level capacity") {
    Assignment a(70, 1);  // one word: 64 levels
    for (AtomId x = 1; x <= 66; ++x) a.push_decision(Lit::pos(x));
    CHECK(a.decision_level() == 67);
    CHECK(!a.deps().overflow(63));  // level 64 -> bit 63 still fits
    CHECK(a.deps().overflow(64));   // level 65 -> bit 64 does not
    CHECK(a.deps().overflow(66));
}

TEST_CASE("trail and cells stay coherent under random operations") {
    testing::SplitMix64 rng(0xa5516e01);
    for (int iter = 0; iter < 100; ++iter) {
        const AtomId n = 12;
        Assignment a(n, 1);
        for (int step = 0; step < 60; ++step) {
            const AtomId atom = static_cast<AtomId>(1 + rng.below(n));
            switch (rng.below(4)) {
                case 0:
                    if (a.unassigned(atom)) a.push_decision(rng.chance(50) ? Lit::pos(atom) : Lit::neg(atom));
                    break;
                case 1:
                    a.assign_propagated(rng.chance(50) ? Lit::pos(atom) : Lit::neg(atom),
                                        a.decision_level(), words({0}), false, 0);
                    break;
                case 2:
                    if (a.decision_level() == 1) a.assign_unit(Lit::neg(atom));
                    break;
                default:
                    if (a.decision_level() > 1)
                        a.backjump(1 + static_cast<std::uint32_t>(rng.below(a.decision_level() - 1)));
                    break;
            }
            // Coherence: nonzero cells == trail entries, with matching levels.
            std::size_t nonzero = 0;
            for (AtomId x = 1; x <= n; ++x)
                if (!a.unassigned(x)) ++nonzero;
            REQUIRE(nonzero == a.trail().size());
            std::uint32_t prev_level = 1;
            for (const auto& e : a.trail()) {
                REQUIRE(a.has(e.lit));
                REQUIRE(a.level_of(e.lit.atom()) == e.level);
                REQUIRE(e.level >= prev_level);  // trail levels never decrease
                prev_level = e.level;
            }
        }
    }
}

TEST_CASE("randomized backjump audit erases dependents of undone decisions") {
    // Build chains where each propagated atom depends on the previous
    // one; undoing the decision must always erase the whole chain.
    testing::SplitMix64 rng(0xa5516e02);
    for (int iter = 0; iter < 50; ++iter) {
        const AtomId n = 16;
        Assignment a(n, 1);
        AtomId next_atom = 1;
        std::vector<std::vector<AtomId>> per_level{{}, {}};  // [level] -> atoms
        while (next_atom + 3 <= n) {
            a.push_decision(Lit::pos(next_atom));
            per_level.push_back({next_atom});
            ++next_atom;
            AtomId prev = per_level.back()[0];
            const unsigned chain = 1 + static_cast<unsigned>(rng.below(2));
            for (unsigned c = 0; c < chain && next_atom <= n; ++c) {
                std::vector<std::uint64_t> bits(a.deps().of(prev).begin(), a.deps().of(prev).end());
                a.assign_propagated(Lit::pos(next_atom), a.decision_level(), bits, false, 0);
                per_level.back().push_back(next_atom);
                prev = next_atom++;
            }
        }
        const std::uint32_t top = a.decision_level();
        if (top == 1) continue;
        const std::uint32_t target = 1 + static_cast<std::uint32_t>(rng.below(top - 1));
        // Deps soundness before the jump: every set bit names a decision level.
        for (AtomId x = 1; x < next_atom; ++x)
            for (std::uint32_t level : bitmap_levels(a.deps().of(x)))
                CHECK(a.level_decision(level).valid());
        a.backjump(target);
        for (std::uint32_t level = 2; level < per_level.size(); ++level)
            for (AtomId x : per_level[level])
                CHECK(a.unassigned(x) == (level > target));
    }
}

}  // TEST_SUITE
