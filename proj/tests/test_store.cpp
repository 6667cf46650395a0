#include <doctest.h>

#include <algorithm>
#include <set>

#include "aspine/completion.hpp"
#include "aspine/nogood_store.hpp"
#include "support/gen.hpp"

using namespace aspine;

namespace {

Nogood ng(std::vector<Lit> lits) { return *Nogood::make(std::move(lits), NogoodOrigin::constraint); }

// Ground truth for the occurrence map: scan the whole pool.
bool occurrence_map_exact(const NogoodStore& st) {
    for (AtomId a = 1; a <= st.total_atoms(); ++a) {
        for (Lit l : {Lit::pos(a), Lit::neg(a)}) {
            std::set<NogoodId> listed;
            for (NogoodId id : st.nogoods_of(l)) {
                if (!listed.insert(id).second) return false;  // duplicate entry
                auto lits = st.literals(id);
                if (std::find(lits.begin(), lits.end(), l) == lits.end()) return false;
            }
            for (NogoodId id = 0; id < static_cast<NogoodId>(st.size()); ++id) {
                auto lits = st.literals(id);
                const bool contains = std::find(lits.begin(), lits.end(), l) != lits.end();
                if (contains != listed.contains(id)) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("store") {

TEST_CASE("build sorts by length, splits units, assigns watches") {
    // Lengths [3,1,2,2] over atoms 1..5.
    std::vector<Nogood> in;
    in.push_back(ng({Lit::pos(1), Lit::pos(2), Lit::pos(3)}));
    in.push_back(ng({Lit::neg(4)}));
    in.push_back(ng({Lit::pos(1), Lit::neg(2)}));
    in.push_back(ng({Lit::neg(3), Lit::pos(5)}));
    StoreBuild b = NogoodStore::build(std::move(in), 5);

    REQUIRE(b.units.size() == 1);
    CHECK(b.units[0] == Lit::neg(4));
    REQUIRE(b.store.size() == 3);
    CHECK(b.store.length(0) == 2);
    CHECK(b.store.length(1) == 2);
    CHECK(b.store.length(2) == 3);
    // Stable within a length class: {T1,F2} came before {F3,T5}.
    CHECK(b.store.literals(0)[0] == Lit::pos(1));
    CHECK(b.store.literals(1)[0] == Lit::neg(3));
    // Watches are the first two literals.
    CHECK(b.store.watch1(0) == Lit::pos(1));
    CHECK(b.store.watch2(0) == Lit::neg(2));

    CHECK(b.store.dump_csv() == "offsets,0,2,4,7\npool,1,-2,-3,5,1,2,3\n");

    auto bounds = b.store.static_class_bounds();
    CHECK(bounds[0] == 0);  // binary start
    CHECK(bounds[1] == 2);  // ternary start
    CHECK(bounds[2] == 3);  // long start
    CHECK(bounds[3] == 3);
}

TEST_CASE("empty input builds an empty store") {
    StoreBuild b = NogoodStore::build({}, 3);
    CHECK(b.store.size() == 0);
    CHECK(b.units.empty());
    CHECK(b.store.dump_csv() == "offsets,0\npool\n");
}

TEST_CASE("occurrence lists match a pool scan on a compiled program") {
    GroundProgram p = parse_program("a :- b, not c.");
    Completion comp = compile_completion(p);
    const AtomId b_r = comp.aux.of_rule(0).b;
    const AtomId t_r = comp.aux.of_rule(0).t;
    StoreBuild sb = NogoodStore::build(std::move(comp.nogoods), comp.aux.total_atoms());
    CHECK(occurrence_map_exact(sb.store));

    // T b_r occurs in {T b_r, F t_r}, {T b_r, F n_r} and {F a, T b_r};
    // T t_r in the trio and {F b, T t_r}.
    CHECK(sb.store.nogoods_of(Lit::pos(b_r)).size() == 3);
    CHECK(sb.store.nogoods_of(Lit::pos(t_r)).size() == 2);
    for (NogoodId id : sb.store.nogoods_of(Lit::pos(t_r))) {
        auto lits = sb.store.literals(id);
        CHECK(std::find(lits.begin(), lits.end(), Lit::pos(t_r)) != lits.end());
    }
}

TEST_CASE("learned nogoods land in their length bucket") {
    StoreBuild b = NogoodStore::build({ng({Lit::pos(1), Lit::pos(2)})}, 9);
    NogoodStore& st = b.store;

    SUBCASE("unit goes to the learned-unit bucket") {
        NogoodId id = st.add_learned(ng({Lit::pos(3)}));
        CHECK(st.learned_unit_ids() == std::vector<NogoodId>{id});
        CHECK(st.cls(id) == LengthClass::unit);
        CHECK(st.nogoods_of(Lit::pos(3)) == std::vector<NogoodId>{id});
    }
    SUBCASE("binary keeps both literals watched") {
        NogoodId id = st.add_learned(ng({Lit::pos(3), Lit::neg(4)}));
        CHECK(st.cls(id) == LengthClass::binary);
        CHECK(st.watch1(id) == Lit::pos(3));
        CHECK(st.watch2(id) == Lit::neg(4));
        CHECK(st.nogoods_of(Lit::pos(3)) == std::vector<NogoodId>{id});
    }
    SUBCASE("long learned nogoods index all their literals") {
        std::vector<Lit> lits;
        for (AtomId a = 2; a <= 8; ++a) lits.push_back(Lit::pos(a));
        NogoodId id = st.add_learned(ng(lits));
        CHECK(st.cls(id) == LengthClass::long_);
        for (Lit l : lits) {
            auto occ = st.nogoods_of(l);
            CHECK(std::find(occ.begin(), occ.end(), id) != occ.end());
        }
        CHECK(occurrence_map_exact(st));
    }
}

TEST_CASE("duplicate learned nogoods are kept but counted") {
    StoreBuild b = NogoodStore::build({}, 4);
    b.store.add_learned(ng({Lit::pos(1), Lit::pos(2)}));
    CHECK(b.store.duplicate_learned() == 0);
    b.store.add_learned(ng({Lit::pos(1), Lit::pos(2)}));
    CHECK(b.store.duplicate_learned() == 1);
    CHECK(b.store.learned_count() == 2);
}

TEST_CASE("learned capacity aborts with a clear error") {
    StoreBuild b = NogoodStore::build({}, 4, /*learned_capacity=*/2);
    b.store.add_learned(ng({Lit::pos(1), Lit::pos(2)}));
    b.store.add_learned(ng({Lit::pos(2), Lit::pos(3)}));
    CHECK_THROWS_AS(b.store.add_learned(ng({Lit::pos(3), Lit::pos(4)})), StoreCapacityError);
}

TEST_CASE("CSR integrity and occurrence completeness on random stores") {
    testing::SplitMix64 rng(0x500e0001);
    for (int iter = 0; iter < 60; ++iter) {
        auto nogoods = testing::random_nogoods(rng, 1 + rng.below(24), 8, 5);
        StoreBuild b = NogoodStore::build(nogoods, 8);
        NogoodStore& st = b.store;
        // Extend with a few learned ones.
        for (auto& extra : testing::random_nogoods(rng, rng.below(5), 8, 5))
            st.add_learned(extra);

        std::size_t pool_len = 0;
        std::size_t last_static_len = 0;
        for (NogoodId id = 0; id < static_cast<NogoodId>(st.size()); ++id) {
            pool_len += st.length(id);
            if (id < static_cast<NogoodId>(st.static_count())) {
                CHECK(st.length(id) >= last_static_len);  // non-decreasing in the static part
                last_static_len = st.length(id);
            }
            CHECK(st.length(id) >= 1);
        }
        CHECK(occurrence_map_exact(st));
        (void)pool_len;
    }
}

}  // TEST_SUITE
