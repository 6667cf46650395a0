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

#include "aspine/decide.hpp"

#include <cassert>
#include <cmath>

namespace aspine {

Heuristic::Heuristic(const HeuristicConfig& cfg, AtomId total_atoms)
    : cfg_(cfg), activity_(total_atoms + 1, 0.0) {
    assert(cfg_.activity_decay > 0.0 && cfg_.activity_decay < 1.0);
}

void Heuristic::on_learned(const Nogood& learned) {
    if (cfg_.kind != HeuristicKind::activity) return;
    for (Lit l : learned) activity_[l.atom()] += increment_;
}

void Heuristic::on_conflict() {
    if (cfg_.kind != HeuristicKind::activity) return;
    increment_ /= cfg_.activity_decay;
    if (increment_ > 1e100) {
        for (double& v : activity_) v *= 1e-100;
        increment_ *= 1e-100;
    }
}

double Heuristic::score(AtomId atom, const NogoodStore& store) const {
    static constexpr LengthClass kClasses[4] = {LengthClass::unit, LengthClass::binary,
                                                LengthClass::ternary, LengthClass::long_};
    switch (cfg_.kind) {
        case HeuristicKind::occurrence_count: {
            std::size_t n = 0;
            for (Lit l : {Lit::pos(atom), Lit::neg(atom)})
                for (LengthClass c : kClasses) n += store.occurrences(l, c).size();
            return static_cast<double>(n);
        }
        case HeuristicKind::jeroslow_wang: {
            double s = 0.0;
            for (Lit l : {Lit::pos(atom), Lit::neg(atom)})
                for (LengthClass c : kClasses)
                    for (NogoodId id : store.occurrences(l, c))
                        s += std::ldexp(1.0, -static_cast<int>(store.length(id)));
            return s;
        }
        case HeuristicKind::activity:
            return activity_[atom];
    }
    return 0.0;
}

std::vector<std::uint32_t> find_applicable(const GroundProgram& prog, const AuxMap& aux,
                                           const Assignment& a) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t ri = 0; ri < prog.rules().size(); ++ri) {
        const auto& ra = aux.of_rule(ri);
        if (ra.vacuous) continue;
        if (!a.unassigned(prog.rules()[ri].head)) continue;
        if (ra.t != 0 && !a.has(Lit::pos(ra.t))) continue;   // positive body not established
        if (ra.n != 0 && a.has(Lit::neg(ra.n))) continue;    // negative body refuted
        out.push_back(ri);
    }
    return out;
}

std::size_t select_best(std::span<const double> scores, WorkerPool* pool) {
    assert(!scores.empty());
    struct Best {
        double score;
        std::size_t idx;
    };
    auto better = [](const Best& a, const Best& b) {
        return a.score > b.score || (a.score == b.score && a.idx < b.idx);
    };
    if (pool == nullptr || pool->size() == 1 || scores.size() < 2) {
        Best best{scores[0], 0};
        for (std::size_t i = 1; i < scores.size(); ++i)
            if (better({scores[i], i}, best)) best = {scores[i], i};
        return best.idx;
    }
    std::vector<Best> partial(pool->size(), Best{-1.0, scores.size()});
    pool->run(scores.size(), [&](unsigned w, std::size_t i) {
        if (partial[w].idx == scores.size() || better({scores[i], i}, partial[w]))
            partial[w] = {scores[i], i};
    });
    Best best{-1.0, scores.size()};
    for (const Best& b : partial)
        if (b.idx != scores.size() && (best.idx == scores.size() || better(b, best))) best = b;
    return best.idx;
}

std::optional<Decision> decide(const GroundProgram& prog, const AuxMap& aux, Assignment& a,
                               const NogoodStore& store, const Heuristic& heur, WorkerPool& pool) {
    std::vector<std::uint32_t> applicable = find_applicable(prog, aux, a);
    if (applicable.empty()) return std::nullopt;

    std::vector<double> scores(applicable.size());
    pool.run(applicable.size(), [&](unsigned, std::size_t i) {
        scores[i] = heur.score(prog.rules()[applicable[i]].head, store);
    });
    const std::uint32_t rule = applicable[select_best(scores, &pool)];

    const Lit lit = Lit::pos(aux.of_rule(rule).b);
    assert(a.unassigned(lit.atom()));  // guaranteed at a consistent fixpoint
    a.push_decision(lit);
    return Decision{rule, lit, a.decision_level()};
}

std::vector<Lit> complete_assignment(const GroundProgram& prog, Assignment& a) {
    std::vector<Lit> assigned;
    for (AtomId p = 1; p <= prog.atom_count(); ++p) {
        if (!a.unassigned(p)) continue;
        const Lit l = Lit::neg(p);
        AssignResult r = a.assign_completion(l);
        assert(r == AssignResult::newly_set);
        (void)r;
        assigned.push_back(l);
    }
    return assigned;
}

}  // namespace aspine
