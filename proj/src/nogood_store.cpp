/*
 *  Copyright (c) 2026  The aspine authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include "aspine/nogood_store.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace aspine {

StoreBuild NogoodStore::build(std::vector<Nogood> nogoods, AtomId total_atoms,
                                      std::size_t learned_capacity) {
    StoreBuild out;
    NogoodStore& st = out.store;
    st.total_atoms_ = total_atoms;
    st.learned_capacity_ = learned_capacity;
    st.occ_.resize(2 * static_cast<std::size_t>(total_atoms) + 2);

    std::vector<const Nogood*> rest;
    rest.reserve(nogoods.size());
    for (const Nogood& ng : nogoods) {
        assert(!ng.empty());
        if (ng.size() == 1 && ng.may_assert(~ng[0])) {
            out.units.push_back(ng[0]);
            st.static_units_.push_back(ng[0]);
        } else {
            // Guard-barred units stay in the store as length-1 entries;
            // they cannot drive anything, only flag their violation.
            rest.push_back(&ng);
        }
    }
    std::stable_sort(rest.begin(), rest.end(),
                     [](const Nogood* a, const Nogood* b) { return a->size() < b->size(); });

    for (const Nogood* ng : rest) {
        const NogoodId id = static_cast<NogoodId>(st.size());
        st.pool_.insert(st.pool_.end(), ng->begin(), ng->end());
        st.offsets_.push_back(static_cast<std::uint32_t>(st.pool_.size()));
        st.origin_.push_back(ng->origin());
        st.truth_guard_.push_back(ng->truth_guard());
        if (ng->size() >= 2) {
            st.watch1_.push_back((*ng)[0]);
            st.watch2_.push_back((*ng)[1]);
        } else {
            st.watch1_.push_back(Lit{});
            st.watch2_.push_back(Lit{});
            st.unit_ids_.push_back(id);
        }
        st.index_nogood(id);
    }
    st.static_count_ = static_cast<std::uint32_t>(st.size());

    auto first_of_len = [&](std::size_t len) {
        std::uint32_t i = 0;
        while (i < st.static_count_ && st.length(static_cast<NogoodId>(i)) < len) ++i;
        return i;
    };
    st.static_bounds_ = {first_of_len(2), first_of_len(3), first_of_len(4), st.static_count_};
    return out;
}

void NogoodStore::index_nogood(NogoodId id) {
    const auto c = static_cast<std::size_t>(cls(id));
    for (Lit l : literals(id)) occ_[l.index()][c].push_back(id);
}

NogoodId NogoodStore::add_learned(const Nogood& ng) {
    assert(!ng.empty());
    if (learned_count() >= learned_capacity_)
        throw StoreCapacityError("learned nogood store capacity exceeded (" +
                                 std::to_string(learned_capacity_) + " nogoods)");

    std::vector<std::int32_t> key;
    key.reserve(ng.size());
    for (Lit l : ng) key.push_back(l.code());
    if (!learned_seen_.insert(std::move(key)).second) ++duplicate_learned_;

    const NogoodId id = static_cast<NogoodId>(size());
    pool_.insert(pool_.end(), ng.begin(), ng.end());
    offsets_.push_back(static_cast<std::uint32_t>(pool_.size()));
    origin_.push_back(NogoodOrigin::learned);
    truth_guard_.push_back(ng.truth_guard());
    if (ng.size() >= 2) {
        watch1_.push_back(ng[0]);
        watch2_.push_back(ng[1]);
    } else {
        watch1_.push_back(Lit{});
        watch2_.push_back(Lit{});
        unit_ids_.push_back(id);
    }
    index_nogood(id);
    return id;
}

std::vector<NogoodId> NogoodStore::nogoods_of(Lit l) const {
    std::vector<NogoodId> ids;
    for (const auto& per_class : occ_[l.index()])
        ids.insert(ids.end(), per_class.begin(), per_class.end());
    return ids;
}

std::string NogoodStore::dump_csv() const {
    std::ostringstream out;
    out << "offsets";
    for (std::uint32_t o : offsets_) out << ',' << o;
    out << "\npool";
    for (Lit l : pool_) out << ',' << l.code();
    out << '\n';
    return out.str();
}

}  // namespace aspine
