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

#ifndef ASPINE_PROPAGATE_HPP
#define ASPINE_PROPAGATE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aspine/assignment.hpp"
#include "aspine/nogood_store.hpp"
#include "aspine/worker_pool.hpp"

namespace aspine {

struct PropagationOutcome {
    bool violated = false;
    std::vector<NogoodId> conflicts;  // nogoods found violated this round
    std::uint64_t propagations = 0;
    std::uint64_t passes = 0;
    std::uint64_t watch_replacements = 0;
};

/// Frontier-driven unit propagation over the nogood store.
///
/// Each pass turns the literals assigned by the previous pass into work
/// items (one per occurrence, each nogood claimed once per pass, binary
/// before ternary before long within a literal). Workers evaluate their
/// items against a snapshot of the assignment: they only read cells and
/// only write the watch slots of nogoods they own. The proposals are then
/// merged in item order through the assignment's compare-and-set — the
/// first proposal for an atom wins newly_set, a same-sign duplicate is
/// agreed, an opposite-sign one turns its nogood into a conflict. The
/// merged order is the single-worker order, so results do not depend on
/// the worker count.
///
/// After a conflict the current pass still completes (all conflicts of
/// the pass are collected); no further pass starts.
class Propagator {
public:
    Propagator(NogoodStore& store, WorkerPool& pool) : store_(&store), pool_(&pool) {}

    /// Assigns the complement of every unit nogood (static and learned)
    /// at level 1 and seeds the frontier. Mutually inconsistent units
    /// are reported as conflicts (static units via their pseudo-id).
    PropagationOutcome initial_propagation(Assignment& a, Frontier& frontier);

    /// Runs passes until fixpoint or violation; new assignments are made
    /// at `level`.
    PropagationOutcome propagate_and_check(Assignment& a, Frontier& frontier, std::uint32_t level);

    /// Dependency bitmap for propagating `w` out of `delta`: the OR of
    /// Deps[x] over the other atoms of delta assigned above level 1.
    /// Returns the bitmap and the sticky overflow flag.
    static std::pair<std::vector<std::uint64_t>, bool> mk_dl_bitmap(std::span<const Lit> delta,
                                                                    Lit w, const Assignment& a);

private:
    struct Eval {
        enum Kind : std::uint8_t { none = 0, propagate, conflict };
        Kind kind = none;
        std::uint8_t replacements = 0;
        Lit prop;
        NogoodId id = 0;
        bool deps_overflow = false;
        std::vector<std::uint64_t> deps;
    };

    void build_items(const Frontier& frontier);
    void evaluate_item(std::size_t i, const Assignment& a);

    NogoodStore* store_;
    WorkerPool* pool_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t stamp_gen_ = 0;
    struct Item {
        Lit trigger;
        NogoodId id;
    };
    std::vector<Item> items_;
    std::vector<Eval> evals_;
};

/// Watch discipline at a no-conflict fixpoint: every CSR nogood either has
/// a watched literal whose complement is assigned, or both watches are on
/// unassigned atoms.
bool validate_watch_invariant(const NogoodStore& store, const Assignment& a, std::string* why = nullptr);

/// Fixpoint soundness: no nogood in the store is unit or violated under
/// the assignment, and every unit nogood's complement is assigned.
bool validate_fixpoint(const NogoodStore& store, const Assignment& a, std::string* why = nullptr);

}  // namespace aspine

#endif
