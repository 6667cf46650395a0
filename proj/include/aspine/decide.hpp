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

#ifndef ASPINE_DECIDE_HPP
#define ASPINE_DECIDE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aspine/assignment.hpp"
#include "aspine/completion.hpp"
#include "aspine/nogood_store.hpp"
#include "aspine/program.hpp"
#include "aspine/worker_pool.hpp"

namespace aspine {

enum class HeuristicKind : std::uint8_t { occurrence_count, jeroslow_wang, activity };

struct HeuristicConfig {
    HeuristicKind kind = HeuristicKind::occurrence_count;
    double activity_decay = 0.95;  // in (0,1), applied once per conflict
};

/// Rule ranking state. occurrence_count and jeroslow_wang score a rule's
/// head atom from the occurrence lists; activity keeps a per-atom counter
/// bumped for every atom of a learned nogood and decayed per conflict
/// (implemented with the usual growing-increment trick).
class Heuristic {
public:
    Heuristic(const HeuristicConfig& cfg, AtomId total_atoms);

    void on_learned(const Nogood& learned);
    void on_conflict();

    double score(AtomId atom, const NogoodStore& store) const;
    const HeuristicConfig& config() const { return cfg_; }

private:
    HeuristicConfig cfg_;
    std::vector<double> activity_;
    double increment_ = 1.0;
};

/// Rules that may carry the next decision: head unassigned, positive body
/// established (T t_r assigned, or no positive body), negative body not
/// yet refuted (F n_r unassigned). Vacuous rules never apply.
std::vector<std::uint32_t> find_applicable(const GroundProgram& prog, const AuxMap& aux,
                                           const Assignment& a);

/// Deterministic argmax: greatest score, ties resolved to the lowest
/// index. When a pool is given the scan is a parallel reduction; the
/// combine order cannot change the winner.
std::size_t select_best(std::span<const double> scores, WorkerPool* pool = nullptr);

struct Decision {
    std::uint32_t rule;
    Lit lit;             // T b_r
    std::uint32_t level;
};

/// Ranks the applicable rules and decides T b_r for the best one at a new
/// decision level. Returns nullopt when no rule is applicable.
std::optional<Decision> decide(const GroundProgram& prog, const AuxMap& aux, Assignment& a,
                               const NogoodStore& store, const Heuristic& heur, WorkerPool& pool);

/// Falsifies every unassigned program atom at the current level (the
/// ASP-computation closing step: no rule is applicable, so nothing can
/// support them). Auxiliary atoms are left to the validating propagation.
/// Returns the assigned literals, to seed the propagation frontier.
std::vector<Lit> complete_assignment(const GroundProgram& prog, Assignment& a);

}  // namespace aspine

#endif
