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

#ifndef ASPINE_ASSIGNMENT_HPP
#define ASPINE_ASSIGNMENT_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aspine/nogood.hpp"
#include "aspine/nogood_store.hpp"

namespace aspine {

enum class AssignResult : std::uint8_t { newly_set, agreed, conflict };

/// Why an atom is assigned. Propagated atoms remember the nogood that
/// forced them (needed by resolution learning); decisions and level-1
/// units have no antecedent. Completion-falsified atoms are justified by
/// the whole decision state (see Assignment::assign_completion).
struct Reason {
    enum Kind : std::int8_t { none = 0, decision, unit_input, propagated, completion };
    Kind kind = none;
    NogoodId antecedent = -1;

    static Reason make_decision() { return {decision, -1}; }
    static Reason make_unit() { return {unit_input, -1}; }
    static Reason make_propagated(NogoodId id) { return {propagated, id}; }
    static Reason make_completion() { return {completion, -1}; }
};

/// Per-atom bitmask over decision levels: bit j-1 stands for level j.
/// Level-1 assignments carry the empty mask. The capacity is words*64
/// levels; assignments depending on levels beyond it get a sticky
/// overflow flag instead (fwd-learning then falls back to resolution).
class DepsMap {
public:
    DepsMap(AtomId total_atoms, std::uint32_t words);

    std::uint32_t words() const { return words_; }
    std::uint32_t capacity_levels() const { return words_ * 64; }

    std::span<const std::uint64_t> of(AtomId a) const {
        return {bits_.data() + static_cast<std::size_t>(a) * words_, words_};
    }
    bool overflow(AtomId a) const { return overflow_[a] != 0; }

    void clear_atom(AtomId a);
    void set(AtomId a, std::span<const std::uint64_t> bits, bool overflow);
    /// Decision at level j: exactly the single bit j-1 (or overflow).
    void set_decision(AtomId a, std::uint32_t level);
    /// Completion falsification under decisions 2..cdl: all their bits.
    void set_all_decision_levels(AtomId a, std::uint32_t cdl);

private:
    std::uint32_t words_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint8_t> overflow_;
};

/// dst |= src, where both spans have the same word count.
void bitmap_or(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
bool bitmap_any(std::span<const std::uint64_t> bits);
bool bitmap_test_level(std::span<const std::uint64_t> bits, std::uint32_t level);
/// Greatest level with a set bit strictly below `below`, or 0 if none.
std::uint32_t bitmap_highest_level_below(std::span<const std::uint64_t> bits, std::uint32_t below);
/// All levels with set bits, ascending.
std::vector<std::uint32_t> bitmap_levels(std::span<const std::uint64_t> bits);

/// The partial assignment: per-atom signed decision-level cells
/// (cell[p] = +level for T p, -level for F p, 0 unassigned), the
/// chronological trail, per-level decision literals, antecedents and the
/// Deps bitmaps. assign() is a compare-and-set: the first writer of an
/// atom wins newly_set, an equal re-assign is agreed, an opposite one is
/// a conflict and mutates nothing.
class Assignment {
public:
    struct TrailEntry {
        Lit lit;
        std::uint32_t level;
    };

    Assignment(AtomId total_atoms, std::uint32_t deps_words);

    AtomId atom_count() const { return total_atoms_; }
    std::uint32_t decision_level() const { return cdl_; }

    std::int32_t cell(AtomId a) const { return cells_[a]; }
    bool unassigned(AtomId a) const { return cells_[a] == 0; }
    bool has(Lit l) const {
        std::int32_t c = cells_[l.atom()];
        return c != 0 && ((c > 0) == l.positive());
    }
    std::uint32_t level_of(AtomId a) const {
        std::int32_t c = cells_[a];
        return static_cast<std::uint32_t>(c < 0 ? -c : c);
    }
    /// Position of the atom's trail entry; valid only while assigned.
    std::size_t trail_index(AtomId a) const { return trail_pos_[a]; }
    Reason reason(AtomId a) const { return reason_[a]; }

    AssignResult assign_unit(Lit l);
    AssignResult assign_propagated(Lit l, std::uint32_t level, std::span<const std::uint64_t> deps,
                                   bool deps_overflow, NogoodId antecedent);
    AssignResult assign_completion(Lit l);
    /// Opens level cdl+1 with `l` as its decision; `l`'s atom must be
    /// unassigned (callers decide only at consistent fixpoints).
    void push_decision(Lit l);

    /// Erases every assignment above target_level (1 <= target < cdl).
    void backjump(std::uint32_t target_level);

    bool is_total() const { return trail_.size() == total_atoms_; }

    std::span<const TrailEntry> trail() const { return trail_; }
    Lit level_decision(std::uint32_t level) const { return level_decisions_[level]; }
    /// Decision literals of levels 2..cdl, in level order.
    std::vector<Lit> decisions() const;

    DepsMap& deps() { return deps_; }
    const DepsMap& deps() const { return deps_; }

    std::string debug_trail(const std::function<std::string(AtomId)>& namer) const;

private:
    AssignResult try_set(Lit l, std::uint32_t level);

    AtomId total_atoms_;
    std::vector<std::int32_t> cells_;
    std::vector<TrailEntry> trail_;
    std::vector<std::size_t> trail_pos_;
    std::vector<Reason> reason_;
    std::vector<Lit> level_decisions_;  // indexed by level; [0], [1] invalid
    std::uint32_t cdl_ = 1;
    DepsMap deps_;
};

/// Frontier of the propagation passes: literals assigned in the previous
/// pass drive the next one.
struct Frontier {
    std::vector<Lit> last, next;

    void seed(Lit l) {
        last.push_back(l);
    }
    void advance() {
        last.swap(next);
        next.clear();
    }
    void clear() {
        last.clear();
        next.clear();
    }
    bool idle() const { return last.empty() && next.empty(); }
};

}  // namespace aspine

#endif
