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

#ifndef ASPINE_SOLVER_HPP
#define ASPINE_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aspine/decide.hpp"
#include "aspine/learn.hpp"
#include "aspine/program.hpp"

namespace aspine {

struct RestartPolicy {
    bool enabled = false;
    std::uint64_t base = 100;  // conflicts before the first restart, >= 1
    double factor = 1.5;       // > 1
};

struct ConflictTrace {
    LearnMode mode_used;
    NogoodId conflict_id;
    std::size_t learned_length;
    std::uint32_t backjump_level;
};

struct SolverConfig {
    LearnMode mode = LearnMode::fwd;
    HeuristicConfig heuristic{};
    unsigned workers = 1;
    RestartPolicy restarts{};
    std::uint64_t max_models = 1;  // 0 = enumerate all
    std::uint32_t deps_words = 16;
    std::uint32_t conflict_fanout = 1;
    std::uint64_t seed = 0;
    bool verify = false;
    bool debug_validate = false;  // run store/assignment validators at fixpoints
    std::size_t learned_capacity = 1u << 22;
    std::function<void(const ConflictTrace&)> trace;  // optional per-conflict hook
};

struct SolveStats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t learned_count = 0;
    std::uint64_t learned_length_sum = 0;
    std::uint64_t restarts = 0;
    std::uint64_t models = 0;
    double wall_ms = 0.0;

    std::uint64_t passes = 0;
    std::uint64_t watch_replacements = 0;
    std::uint64_t duplicate_learned = 0;
    std::uint64_t blocking_nogoods = 0;
    std::uint64_t res_learned = 0;
    std::uint64_t fwd_learned = 0;
    std::uint64_t fwd_fallbacks = 0;

    // Structural self-checks; expected to stay 0.
    std::uint64_t uip_check_failures = 0;
    std::uint64_t fwd_decision_only_failures = 0;
    std::uint64_t asserting_failures = 0;

    double avg_learned_len() const {
        return learned_count == 0 ? 0.0 : static_cast<double>(learned_length_sum) /
                                              static_cast<double>(learned_count);
    }
    double wall_seconds() const { return wall_ms / 1000.0; }
    double per_second(std::uint64_t counter) const {
        return wall_ms <= 0.0 ? 0.0 : static_cast<double>(counter) / wall_seconds();
    }
    double propagations_per_sec() const { return per_second(propagations); }
    double decisions_per_sec() const { return per_second(decisions); }
    double learned_per_sec() const { return per_second(learned_count); }
};

/// The true program atoms of one answer set.
struct Model {
    std::vector<AtomId> atom_ids;    // sorted by id
    std::vector<std::string> atoms;  // names, sorted lexicographically
};

enum class SolveStatus : std::uint8_t { sat, unsat };

struct SolveResult {
    std::vector<Model> models;
    SolveStats stats;
    SolveStatus status = SolveStatus::unsat;
};

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SolveResult solve(const GroundProgram& prog, const SolverConfig& cfg);

/// Definitional answer-set check via the oracle module.
bool verify_model(const GroundProgram& prog, const Model& m);

enum class StatsFormat : std::uint8_t { human, csv };

struct StatsContext {
    std::string instance;
    std::string mode;
    std::string heuristic;
    unsigned workers = 1;
    SolveStatus status = SolveStatus::unsat;
    std::uint64_t models = 0;
};

std::string emit_stats(const SolveStats& stats, const StatsContext& ctx, StatsFormat format);
/// Header line matching the csv rows of emit_stats.
std::string stats_csv_header();

const char* to_string(LearnMode mode);
const char* to_string(HeuristicKind kind);
const char* to_string(SolveStatus status);

}  // namespace aspine

#endif
