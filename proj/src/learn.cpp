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

#include "aspine/learn.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace aspine {

NogoodId select_conflict(std::span<const NogoodId> conflicts, const NogoodStore& store) {
    assert(!conflicts.empty());
    NogoodId best = conflicts[0];
    for (NogoodId id : conflicts.subspan(1)) {
        const std::size_t len = store.length(id);
        const std::size_t best_len = store.length(best);
        if (len < best_len || (len == best_len && id < best)) best = id;
    }
    return best;
}

namespace {

std::uint32_t max_level(const std::vector<Lit>& lits, const Assignment& a, Lit except) {
    std::uint32_t m = 0;
    for (Lit l : lits)
        if (l != except) m = std::max(m, a.level_of(l.atom()));
    return m;
}

Lit deepest(const std::vector<Lit>& lits, const Assignment& a) {
    Lit d = lits.front();
    for (Lit l : lits)
        if (a.trail_index(l.atom()) > a.trail_index(d.atom())) d = l;
    return d;
}

// (delta \ {sigma}) ∪ (epsilon \ {~sigma}), keeping atom-sorted order.
std::vector<Lit> resolve(const std::vector<Lit>& delta, Lit sigma, std::span<const Lit> epsilon) {
    std::vector<Lit> out;
    out.reserve(delta.size() + epsilon.size());
    for (Lit l : delta)
        if (l != sigma) out.push_back(l);
    for (Lit l : epsilon)
        if (l.atom() != sigma.atom()) out.push_back(l);
    std::sort(out.begin(), out.end(), [](Lit x, Lit y) { return atom_less(x, y); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

ConflictAnalysisResult res_learning(NogoodId delta, const NogoodStore& store, const Assignment& a) {
    assert(!is_unit_pseudo_id(delta));
    std::vector<Lit> lits(store.literals(delta).begin(), store.literals(delta).end());
    assert(std::all_of(lits.begin(), lits.end(), [&](Lit l) { return a.has(l); }));

    std::vector<Lit> decision_prefix;  // lazily built virtual antecedent body
    for (;;) {
        const Lit sigma = deepest(lits, a);
        const std::uint32_t sigma_level = a.level_of(sigma.atom());
        const std::uint32_t kappa = max_level(lits, a, sigma);
        // Stop at the first UIP whose assertion is a falsity. A negative
        // UIP would assert a truth the learned nogood cannot justify
        // rule-wise, so resolution continues toward the decision, which
        // is always a positive literal and a hard floor.
        if (kappa != sigma_level && sigma.positive()) {
            auto learned = Nogood::make(lits, NogoodOrigin::learned, kNoTruth);
            assert(learned.has_value());
            return {std::move(*learned), std::max<std::uint32_t>(kappa, 1), LearnMode::res, delta};
        }
        const Reason reason = a.reason(sigma.atom());
        switch (reason.kind) {
            case Reason::propagated:
                lits = resolve(lits, sigma, store.literals(reason.antecedent));
                break;
            case Reason::completion: {
                // Virtual antecedent: the current decision prefix.
                if (decision_prefix.empty()) decision_prefix = a.decisions();
                lits = resolve(lits, sigma, decision_prefix);
                break;
            }
            default:
                // A decision is the unique assignment of its level (and is
                // positive), so it can only be the stopping point.
                throw std::logic_error("res_learning: literal at conflict level has no antecedent");
        }
        assert(!lits.empty());
    }
}

std::optional<ConflictAnalysisResult> fwd_learning(NogoodId delta, const NogoodStore& store,
                                                   const Assignment& a, WorkerPool& pool) {
    assert(!is_unit_pseudo_id(delta));
    const std::span<const Lit> lits = store.literals(delta);

    std::uint32_t conflict_level = 0;
    for (Lit l : lits) {
        assert(a.has(l));
        conflict_level = std::max(conflict_level, a.level_of(l.atom()));
        if (a.deps().overflow(l.atom())) return std::nullopt;  // beyond bitmap capacity
    }
    assert(conflict_level >= 2);

    // OR-reduction of the Deps bitmaps over the conflicting nogood's atoms.
    const std::size_t words = a.deps().words();
    std::vector<std::uint64_t> merged(words, 0);
    pool.or_reduce(
        lits.size(), words,
        [&](std::size_t i, std::span<std::uint64_t> acc) {
            const AtomId atom = lits[i].atom();
            if (a.level_of(atom) > 1) bitmap_or(acc, a.deps().of(atom));
        },
        merged);
    assert(bitmap_test_level(merged, conflict_level));

    std::vector<Lit> decision_lits;
    for (std::uint32_t level : bitmap_levels(merged)) {
        assert(level >= 2 && level <= conflict_level);
        decision_lits.push_back(a.level_decision(level));
    }
    auto learned = Nogood::make(std::move(decision_lits), NogoodOrigin::learned, kNoTruth);
    assert(learned.has_value());

    std::uint32_t target = bitmap_highest_level_below(merged, conflict_level);
    if (target == 0) target = 1;
    return ConflictAnalysisResult{std::move(*learned), target, LearnMode::fwd, delta};
}

AnalysisOutcome analyze(std::span<const NogoodId> conflicts, LearnMode mode, std::uint32_t fanout,
                        const NogoodStore& store, const Assignment& a, WorkerPool& pool) {
    assert(!conflicts.empty());
    std::vector<NogoodId> selected;
    if (mode == LearnMode::res || fanout <= 1) {
        selected.push_back(select_conflict(conflicts, store));
    } else {
        selected.assign(conflicts.begin(), conflicts.end());
        std::sort(selected.begin(), selected.end(), [&](NogoodId x, NogoodId y) {
            return store.length(x) < store.length(y) || (store.length(x) == store.length(y) && x < y);
        });
        selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
        if (selected.size() > fanout) selected.resize(fanout);
    }

    AnalysisOutcome out;
    out.backjump_level = UINT32_MAX;
    for (NogoodId id : selected) {
        ConflictAnalysisResult r = [&] {
            if (mode == LearnMode::fwd) {
                if (auto fwd = fwd_learning(id, store, a, pool)) return std::move(*fwd);
            }
            return res_learning(id, store, a);
        }();
        out.backjump_level = std::min(out.backjump_level, r.backjump_level);
        out.results.push_back(std::move(r));
    }
    return out;
}

}  // namespace aspine
