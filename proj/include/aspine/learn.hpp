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

#ifndef ASPINE_LEARN_HPP
#define ASPINE_LEARN_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aspine/assignment.hpp"
#include "aspine/nogood_store.hpp"
#include "aspine/worker_pool.hpp"

namespace aspine {

enum class LearnMode : std::uint8_t { fwd, res };

struct ConflictAnalysisResult {
    Nogood learned;
    std::uint32_t backjump_level;  // >= 1, strictly below the conflict level
    LearnMode mode_used;
    NogoodId conflict_id;
};

/// Shortest conflicting nogood, ties resolved to the lowest id.
NogoodId select_conflict(std::span<const NogoodId> conflicts, const NogoodStore& store);

/// Resolution-based first-UIP analysis: repeatedly resolve the violated
/// nogood with the antecedent of its most recently assigned literal until
/// a single literal of the conflict level remains. Completion-falsified
/// literals resolve against their virtual antecedent, the full decision
/// prefix (their falsification is justified by the whole decision state).
ConflictAnalysisResult res_learning(NogoodId delta, const NogoodStore& store, const Assignment& a);

/// Dependency-bitmap analysis: ORs the Deps bitmaps of the conflicting
/// nogood's atoms (a parallel reduction; the operator is associative and
/// commutative, so any work partition yields the same bits) and learns
/// the nogood of the implicated decision literals. The backjump target is
/// the greatest implicated level strictly below the conflict level, or 1.
/// Returns nullopt when a bitmap overflowed its level capacity; the
/// caller then falls back to res_learning.
std::optional<ConflictAnalysisResult> fwd_learning(NogoodId delta, const NogoodStore& store,
                                                   const Assignment& a, WorkerPool& pool);

struct AnalysisOutcome {
    std::vector<ConflictAnalysisResult> results;
    std::uint32_t backjump_level;  // minimum over the results
};

/// Analyzes the selected conflicts: in res mode exactly the selected one;
/// in fwd mode up to `fanout` shortest conflicts, each falling back to
/// resolution on bitmap overflow.
AnalysisOutcome analyze(std::span<const NogoodId> conflicts, LearnMode mode, std::uint32_t fanout,
                        const NogoodStore& store, const Assignment& a, WorkerPool& pool);

}  // namespace aspine

#endif
