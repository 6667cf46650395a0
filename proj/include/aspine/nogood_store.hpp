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

#ifndef ASPINE_NOGOOD_STORE_HPP
#define ASPINE_NOGOOD_STORE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "aspine/nogood.hpp"

namespace aspine {

/// Stable nogood identifier: the position in the CSR offsets array.
/// Static unit nogoods never enter the CSR store; where an id is needed
/// for them (initial-propagation conflicts), the k-th unit is reported as
/// the pseudo-id -(k+1).
using NogoodId = std::int32_t;

inline constexpr NogoodId unit_pseudo_id(std::size_t k) { return -static_cast<NogoodId>(k) - 1; }
inline constexpr bool is_unit_pseudo_id(NogoodId id) { return id < 0; }

/// Length classes mirror the per-length propagation passes.
enum class LengthClass : std::uint8_t { unit = 0, binary = 1, ternary = 2, long_ = 3 };

inline LengthClass length_class(std::size_t len) {
    return len >= 4 ? LengthClass::long_ : static_cast<LengthClass>(len - 1);
}

struct StoreCapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StoreBuild;

/// Length-sorted CSR pool of nogoods with a per-literal occurrence map and
/// two watched literals per nogood of length >= 2. The static partition is
/// immutable after build(); learned nogoods are appended behind it.
class NogoodStore {
public:
    /// Splits out unit nogoods, sorts the rest by length (stable), lays
    /// them out in the CSR pool and indexes occurrences and watches.
    /// `total_atoms` covers program plus auxiliary atoms. A unit whose
    /// forced complement is barred by its truth guard cannot drive the
    /// initial propagation; it stays in the store as a length-1 entry and
    /// is only ever checked for violation.
    static StoreBuild build(std::vector<Nogood> nogoods, AtomId total_atoms,
                            std::size_t learned_capacity = 1u << 22);

    NogoodId add_learned(const Nogood& ng);

    std::size_t size() const { return offsets_.size() - 1; }
    std::size_t static_count() const { return static_count_; }
    std::size_t learned_count() const { return size() - static_count_; }
    std::size_t duplicate_learned() const { return duplicate_learned_; }

    std::span<const Lit> literals(NogoodId id) const {
        return {pool_.data() + offsets_[id], pool_.data() + offsets_[id + 1]};
    }
    std::size_t length(NogoodId id) const { return offsets_[id + 1] - offsets_[id]; }
    LengthClass cls(NogoodId id) const { return length_class(length(id)); }
    NogoodOrigin origin(NogoodId id) const { return origin_[id]; }

    /// Boundaries of the static length partitions: units occupy [0, b),
    /// then [b, t) binary, [t, l) ternary, [l, static_count) long.
    std::array<std::uint32_t, 4> static_class_bounds() const { return static_bounds_; }

    const std::vector<Lit>& static_units() const { return static_units_; }
    /// All length-1 CSR entries: guard-barred static units plus learned
    /// units, in id order.
    const std::vector<NogoodId>& unit_ids() const { return unit_ids_; }
    std::vector<NogoodId> learned_unit_ids() const {
        std::vector<NogoodId> ids;
        for (NogoodId id : unit_ids_)
            if (id >= static_cast<NogoodId>(static_count_)) ids.push_back(id);
        return ids;
    }

    /// Ids of the nogoods of one length class containing l, in insertion
    /// order (static ids ascend by construction).
    const std::vector<NogoodId>& occurrences(Lit l, LengthClass c) const {
        return occ_[l.index()][static_cast<std::size_t>(c)];
    }
    /// All ids containing l, concatenated in class order unit/bin/ter/long.
    std::vector<NogoodId> nogoods_of(Lit l) const;

    Lit watch1(NogoodId id) const { return watch1_[id]; }
    Lit watch2(NogoodId id) const { return watch2_[id]; }
    void set_watches(NogoodId id, Lit w1, Lit w2) {
        watch1_[id] = w1;
        watch2_[id] = w2;
    }

    /// Truth guard carried over from the Nogood (see nogood.hpp): whether
    /// this nogood may derive `l` by unit propagation.
    AtomId truth_guard(NogoodId id) const { return truth_guard_[id]; }
    bool may_assert(NogoodId id, Lit l) const {
        return !l.positive() || truth_guard_[id] == kAnyTruth || truth_guard_[id] == l.atom();
    }

    AtomId total_atoms() const { return total_atoms_; }

    /// CSV dump of the raw CSR arrays: one `offsets,...` line and one
    /// `pool,...` line of signed literal codes.
    std::string dump_csv() const;

private:
    void index_nogood(NogoodId id);

    std::vector<Lit> pool_;
    std::vector<std::uint32_t> offsets_{0};
    std::vector<NogoodOrigin> origin_;
    std::vector<AtomId> truth_guard_;
    std::vector<Lit> watch1_, watch2_;
    std::uint32_t static_count_ = 0;
    std::array<std::uint32_t, 4> static_bounds_{0, 0, 0, 0};
    std::vector<Lit> static_units_;
    std::vector<NogoodId> unit_ids_;
    std::vector<std::array<std::vector<NogoodId>, 4>> occ_;
    AtomId total_atoms_ = 0;
    std::size_t learned_capacity_ = 0;
    std::size_t duplicate_learned_ = 0;

    struct LitVecHash {
        std::size_t operator()(const std::vector<std::int32_t>& v) const {
            std::size_t h = 0xcbf29ce484222325ull;
            for (auto c : v) h = (h ^ static_cast<std::size_t>(static_cast<std::uint32_t>(c))) * 0x100000001b3ull;
            return h;
        }
    };
    std::unordered_set<std::vector<std::int32_t>, LitVecHash> learned_seen_;
};

struct StoreBuild {
    NogoodStore store;
    std::vector<Lit> units;  // literals of the static unit nogoods
};

}  // namespace aspine

#endif
