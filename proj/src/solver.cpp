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

#include "aspine/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <sstream>

#include "aspine/completion.hpp"
#include "aspine/oracle.hpp"
#include "aspine/propagate.hpp"

namespace aspine {

namespace {

class Driver {
public:
    Driver(const GroundProgram& prog, const SolverConfig& cfg)
        : prog_(prog),
          cfg_(cfg),
          comp_(compile_completion(prog)),
          build_(NogoodStore::build(std::move(comp_.nogoods), comp_.aux.total_atoms(),
                                    cfg.learned_capacity)),
          store_(build_.store),
          assignment_(comp_.aux.total_atoms(), cfg.deps_words),
          pool_(cfg.workers),
          propagator_(store_, pool_),
          heuristic_(cfg.heuristic, comp_.aux.total_atoms()),
          restart_threshold_(cfg.restarts.base) {}

    SolveResult run();

private:
    void absorb(const PropagationOutcome& out) {
        result_.stats.propagations += out.propagations;
        result_.stats.passes += out.passes;
        result_.stats.watch_replacements += out.watch_replacements;
    }

    // Learned nogoods watch their two most recently assigned literals:
    // after the backjump the deepest one is exactly the asserted slot.
    void init_learned_watches(NogoodId id) {
        const std::span<const Lit> lits = store_.literals(id);
        if (lits.size() < 2) return;
        Lit deepest, second;
        for (Lit l : lits) {
            assert(assignment_.has(l));
            if (!deepest.valid() ||
                assignment_.trail_index(l.atom()) > assignment_.trail_index(deepest.atom())) {
                second = deepest;
                deepest = l;
            } else if (!second.valid() ||
                       assignment_.trail_index(l.atom()) > assignment_.trail_index(second.atom())) {
                second = l;
            }
        }
        store_.set_watches(id, deepest, second);
    }

    void validate_state() {
        std::string why;
        if (!validate_fixpoint(store_, assignment_, &why) ||
            !validate_watch_invariant(store_, assignment_, &why))
            throw std::logic_error("fixpoint invariant broken: " + why);
    }

    bool handle_conflicts(const std::vector<NogoodId>& conflicts);
    void do_restart();
    void try_assert(NogoodId id);
    bool is_unit_now(NogoodId id) const;
    void record_model();
    // Returns false when enumeration is complete.
    bool block_current_model();

    const GroundProgram& prog_;
    const SolverConfig& cfg_;
    Completion comp_;
    StoreBuild build_;
    NogoodStore& store_;
    Assignment assignment_;
    WorkerPool pool_;
    Propagator propagator_;
    Heuristic heuristic_;
    Frontier frontier_;
    std::vector<NogoodId> pending_conflicts_;
    std::uint64_t restart_threshold_;
    std::uint64_t conflicts_at_restart_ = 0;
    SolveResult result_;
};

bool Driver::is_unit_now(NogoodId id) const {
    std::size_t free = 0;
    for (Lit l : store_.literals(id)) {
        if (assignment_.unassigned(l.atom())) ++free;
        else if (!assignment_.has(l)) return false;  // already satisfied
    }
    return free == 1;
}

void Driver::try_assert(NogoodId id) {
    const std::span<const Lit> lits = store_.literals(id);
    Lit remaining;
    for (Lit l : lits) {
        if (assignment_.unassigned(l.atom())) {
            if (remaining.valid()) return;  // two or more open literals
            remaining = l;
        } else if (!assignment_.has(l)) {
            return;  // satisfied
        }
    }
    if (!remaining.valid()) {
        pending_conflicts_.push_back(id);  // fully assigned and violated
        return;
    }
    if (!store_.may_assert(id, ~remaining)) return;
    auto [deps, overflow] = Propagator::mk_dl_bitmap(lits, ~remaining, assignment_);
    switch (assignment_.assign_propagated(~remaining, assignment_.decision_level(), deps, overflow,
                                          id)) {
        case AssignResult::newly_set:
            frontier_.last.push_back(~remaining);
            ++result_.stats.propagations;
            break;
        case AssignResult::agreed:
            break;
        case AssignResult::conflict:
            pending_conflicts_.push_back(id);
            break;
    }
}

void Driver::do_restart() {
    ++result_.stats.restarts;
    conflicts_at_restart_ = result_.stats.conflicts;
    restart_threshold_ = static_cast<std::uint64_t>(
        std::ceil(static_cast<double>(restart_threshold_) * cfg_.restarts.factor));
    frontier_.clear();
    if (assignment_.decision_level() > 1) assignment_.backjump(1);
    // Replay input and learned units; everything still assigned agrees.
    PropagationOutcome out = propagator_.initial_propagation(assignment_, frontier_);
    absorb(out);
    assert(!out.violated);
}

bool Driver::handle_conflicts(const std::vector<NogoodId>& conflicts) {
    ++result_.stats.conflicts;
    if (assignment_.decision_level() == 1) return false;  // no decisions to revise

    AnalysisOutcome analysis =
        analyze(conflicts, cfg_.mode, cfg_.conflict_fanout, store_, assignment_, pool_);

    std::vector<NogoodId> added;
    for (ConflictAnalysisResult& r : analysis.results) {
        // Structural checks behind the learning guarantees.
        if (r.mode_used == LearnMode::res) {
            std::uint32_t conflict_level = 0;
            for (Lit l : r.learned)
                conflict_level = std::max(conflict_level, assignment_.level_of(l.atom()));
            std::size_t at_conflict = 0;
            for (Lit l : r.learned)
                if (assignment_.level_of(l.atom()) == conflict_level) ++at_conflict;
            if (at_conflict != 1) ++result_.stats.uip_check_failures;
            ++result_.stats.res_learned;
            if (cfg_.mode == LearnMode::fwd) ++result_.stats.fwd_fallbacks;
        } else {
            for (Lit l : r.learned)
                if (assignment_.reason(l.atom()).kind != Reason::decision)
                    ++result_.stats.fwd_decision_only_failures;
            ++result_.stats.fwd_learned;
        }

        NogoodId id = store_.add_learned(r.learned);
        init_learned_watches(id);
        added.push_back(id);
        ++result_.stats.learned_count;
        result_.stats.learned_length_sum += r.learned.size();
        heuristic_.on_learned(r.learned);
        if (cfg_.trace)
            cfg_.trace({r.mode_used, r.conflict_id, r.learned.size(), r.backjump_level});
    }
    heuristic_.on_conflict();

    const bool restart_due =
        cfg_.restarts.enabled &&
        result_.stats.conflicts - conflicts_at_restart_ >= restart_threshold_;
    if (restart_due) {
        do_restart();
    } else {
        frontier_.clear();
        assignment_.backjump(analysis.backjump_level);
        for (std::size_t i = 0; i < added.size(); ++i)
            if (analysis.results[i].backjump_level == analysis.backjump_level &&
                !is_unit_now(added[i]))
                ++result_.stats.asserting_failures;
    }
    for (NogoodId id : added) try_assert(id);
    return true;
}

void Driver::record_model() {
    Model m;
    for (AtomId p = 1; p <= prog_.atom_count(); ++p)
        if (assignment_.cell(p) > 0) m.atom_ids.push_back(p);
    for (AtomId p : m.atom_ids) m.atoms.push_back(prog_.name(p));
    std::sort(m.atoms.begin(), m.atoms.end());

    if (cfg_.verify) {
        if (!is_answer_set(prog_, m.atom_ids))
            throw VerificationError("computed model is not an answer set");
        std::vector<AtomId> tp = tp_step(prog_, m.atom_ids);
        if (tp != m.atom_ids)
            throw VerificationError("computed model is not a fixpoint of the consequence operator");
    }
    result_.models.push_back(std::move(m));
    ++result_.stats.models;
}

bool Driver::block_current_model() {
    std::vector<Lit> decisions = assignment_.decisions();
    if (decisions.empty()) return false;  // the model is forced: nothing else exists
    auto blocking = Nogood::make(std::move(decisions), NogoodOrigin::learned, kNoTruth);
    assert(blocking.has_value());
    NogoodId id = store_.add_learned(*blocking);
    init_learned_watches(id);
    ++result_.stats.blocking_nogoods;
    frontier_.clear();
    assignment_.backjump(1);
    try_assert(id);
    return true;
}

SolveResult Driver::run() {
    const auto t0 = std::chrono::steady_clock::now();
    bool exhausted = false;

    PropagationOutcome initial = propagator_.initial_propagation(assignment_, frontier_);
    absorb(initial);
    if (!initial.violated) {
        for (;;) {
            std::vector<NogoodId> conflicts;
            if (pending_conflicts_.empty()) {
                PropagationOutcome out =
                    propagator_.propagate_and_check(assignment_, frontier_, assignment_.decision_level());
                absorb(out);
                conflicts = std::move(out.conflicts);
            } else {
                conflicts = std::move(pending_conflicts_);
                pending_conflicts_.clear();
            }

            if (!conflicts.empty()) {
                if (!handle_conflicts(conflicts)) {
                    exhausted = true;
                    break;
                }
                continue;
            }

            if (cfg_.debug_validate) validate_state();

            if (!assignment_.is_total()) {
                if (auto d = decide(prog_, comp_.aux, assignment_, store_, heuristic_, pool_)) {
                    ++result_.stats.decisions;
                    frontier_.clear();
                    frontier_.seed(d->lit);
                } else {
                    std::vector<Lit> falsified = complete_assignment(prog_, assignment_);
                    assert(!falsified.empty());
                    frontier_.clear();
                    frontier_.last = std::move(falsified);
                }
                continue;
            }

            record_model();
            if (cfg_.max_models != 0 && result_.stats.models >= cfg_.max_models) break;
            if (!block_current_model()) break;
        }
    }

    result_.status = result_.models.empty() ? SolveStatus::unsat : SolveStatus::sat;
    (void)exhausted;
    result_.stats.duplicate_learned = store_.duplicate_learned();
    result_.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return std::move(result_);
}

}  // namespace

SolveResult solve(const GroundProgram& prog, const SolverConfig& cfg) {
    return Driver(prog, cfg).run();
}

bool verify_model(const GroundProgram& prog, const Model& m) {
    return is_answer_set(prog, m.atom_ids);
}

const char* to_string(LearnMode mode) { return mode == LearnMode::fwd ? "fwd" : "res"; }

const char* to_string(HeuristicKind kind) {
    switch (kind) {
        case HeuristicKind::occurrence_count: return "occ";
        case HeuristicKind::jeroslow_wang: return "jw";
        case HeuristicKind::activity: return "act";
    }
    return "?";
}

const char* to_string(SolveStatus status) {
    return status == SolveStatus::sat ? "SAT" : "UNSAT";
}

std::string stats_csv_header() {
    return "instance,mode,heuristic,workers,status,models,decisions,propagations,conflicts,"
           "learned,avg_learned_len,restarts,wall_ms,props_per_sec,decisions_per_sec,"
           "learned_per_sec";
}

std::string emit_stats(const SolveStats& s, const StatsContext& ctx, StatsFormat format) {
    std::ostringstream out;
    if (format == StatsFormat::csv) {
        out << ctx.instance << ',' << ctx.mode << ',' << ctx.heuristic << ',' << ctx.workers << ','
            << to_string(ctx.status) << ',' << ctx.models << ',' << s.decisions << ','
            << s.propagations << ',' << s.conflicts << ',' << s.learned_count << ','
            << s.avg_learned_len() << ',' << s.restarts << ',' << s.wall_ms << ','
            << s.propagations_per_sec() << ',' << s.decisions_per_sec() << ','
            << s.learned_per_sec();
        return out.str();
    }
    out << "instance       : " << ctx.instance << '\n'
        << "mode/heuristic : " << ctx.mode << '/' << ctx.heuristic << " (workers " << ctx.workers
        << ")\n"
        << "status         : " << to_string(ctx.status) << '\n'
        << "models         : " << ctx.models << '\n'
        << "decisions      : " << s.decisions << " (" << s.decisions_per_sec() << "/s)\n"
        << "propagations   : " << s.propagations << " (" << s.propagations_per_sec() << "/s)\n"
        << "conflicts      : " << s.conflicts << '\n'
        << "learned        : " << s.learned_count << " (" << s.learned_per_sec()
        << "/s, avg len " << s.avg_learned_len() << ")\n"
        << "restarts       : " << s.restarts << '\n'
        << "wall time      : " << s.wall_ms << " ms";
    return out.str();
}

}  // namespace aspine
