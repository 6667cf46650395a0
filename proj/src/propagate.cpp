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

#include "aspine/propagate.hpp"

#include <cassert>

namespace aspine {

PropagationOutcome Propagator::initial_propagation(Assignment& a, Frontier& frontier) {
    PropagationOutcome out;
    auto force = [&](Lit sigma, NogoodId id) {
        switch (a.assign_unit(~sigma)) {
            case AssignResult::newly_set:
                frontier.last.push_back(~sigma);
                ++out.propagations;
                break;
            case AssignResult::agreed:
                break;
            case AssignResult::conflict:
                out.conflicts.push_back(id);
                break;
        }
    };
    const auto& units = store_->static_units();
    for (std::size_t k = 0; k < units.size(); ++k) force(units[k], unit_pseudo_id(k));
    for (NogoodId id : store_->unit_ids()) {
        const Lit sigma = store_->literals(id)[0];
        if (store_->may_assert(id, ~sigma)) force(sigma, id);
        else if (a.has(sigma)) out.conflicts.push_back(id);  // violated passive unit
    }
    out.violated = !out.conflicts.empty();
    return out;
}

bool mk_dl_bitmap_into(std::span<const Lit> delta, Lit w, const Assignment& a,
                       std::span<std::uint64_t> out) {
    std::fill(out.begin(), out.end(), 0);
    bool overflow = false;
    const DepsMap& deps = a.deps();
    for (Lit x : delta) {
        if (x.atom() == w.atom()) continue;
        assert(!a.unassigned(x.atom()));
        if (a.level_of(x.atom()) <= 1) continue;  // input units carry no dependencies
        bitmap_or(out, deps.of(x.atom()));
        overflow |= deps.overflow(x.atom());
    }
    return overflow;
}

std::pair<std::vector<std::uint64_t>, bool> Propagator::mk_dl_bitmap(std::span<const Lit> delta,
                                                                     Lit w, const Assignment& a) {
    std::vector<std::uint64_t> bits(a.deps().words(), 0);
    bool ovf = mk_dl_bitmap_into(delta, w, a, bits);
    return {std::move(bits), ovf};
}

void Propagator::build_items(const Frontier& frontier) {
    items_.clear();
    stamp_.resize(store_->size(), 0);
    ++stamp_gen_;
    static constexpr LengthClass kClasses[4] = {LengthClass::unit, LengthClass::binary,
                                                LengthClass::ternary, LengthClass::long_};
    for (Lit l : frontier.last)
        for (LengthClass c : kClasses)
            for (NogoodId id : store_->occurrences(l, c))
                if (stamp_[id] != stamp_gen_) {
                    stamp_[id] = stamp_gen_;
                    items_.push_back({l, id});
                }
}

void Propagator::evaluate_item(std::size_t i, const Assignment& a) {
    Eval& e = evals_[i];
    const NogoodId id = items_[i].id;
    e.id = id;
    const std::span<const Lit> lits = store_->literals(id);
    if (lits.size() == 1) {
        // Length-1 store entries exist only as passive checkers (units
        // whose assert is barred); this one is in the frontier's
        // occurrence list, so its literal just got assigned.
        if (a.has(lits[0])) e.kind = Eval::conflict;
        return;
    }
    Lit w1 = store_->watch1(id);
    Lit w2 = store_->watch2(id);

    // Satisfied through a watch: nothing can happen to this nogood.
    if (a.has(~w1) || a.has(~w2)) return;
    const bool w1_in = !a.unassigned(w1.atom());
    const bool w2_in = !a.unassigned(w2.atom());
    if (!w1_in && !w2_in) return;  // at least two literals free

    Lit sat, u1, u2;
    for (Lit l : lits) {
        if (a.unassigned(l.atom())) {
            if (!u1.valid()) u1 = l;
            else if (!u2.valid()) u2 = l;
        } else if (!a.has(l) && !sat.valid()) {
            sat = l;
        }
    }

    if (sat.valid()) {
        // Satisfied through a non-watched literal: park a watch there so
        // later passes exit early.
        if (w1 != sat && w2 != sat) {
            (w1_in ? w1 : w2) = sat;
            ++e.replacements;
            store_->set_watches(id, w1, w2);
        }
        return;
    }
    if (!u1.valid()) {
        e.kind = Eval::conflict;  // every literal holds
        return;
    }
    if (!u2.valid()) {
        // Unit: propose the complement of the remaining literal; keep the
        // remaining literal watched so the satisfied-check sees it next.
        // A proposal barred by the truth guard stays passive: the nogood
        // can still turn into a conflict, it just derives nothing.
        if (w1 != u1 && w2 != u1) {
            (w1_in ? w1 : w2) = u1;
            ++e.replacements;
            store_->set_watches(id, w1, w2);
        }
        if (!store_->may_assert(id, ~u1)) return;
        e.kind = Eval::propagate;
        e.prop = ~u1;
        e.deps.assign(a.deps().words(), 0);
        e.deps_overflow = mk_dl_bitmap_into(lits, e.prop, a, e.deps);
        return;
    }
    // Two or more literals free: move any assigned watch to the
    // lowest-index unassigned non-watched literal.
    auto substitute = [&](Lit other) {
        for (Lit l : lits)
            if (a.unassigned(l.atom()) && l != other) return l;
        assert(false);
        return Lit{};
    };
    bool moved = false;
    if (w1_in) {
        w1 = substitute(w2);
        ++e.replacements;
        moved = true;
    }
    if (w2_in) {
        w2 = substitute(w1);
        ++e.replacements;
        moved = true;
    }
    if (moved) store_->set_watches(id, w1, w2);
}

PropagationOutcome Propagator::propagate_and_check(Assignment& a, Frontier& frontier,
                                                   std::uint32_t level) {
    PropagationOutcome out;
    while (!frontier.last.empty()) {
        ++out.passes;
        build_items(frontier);
        evals_.assign(items_.size(), Eval{});
        pool_->run(items_.size(), [&](unsigned, std::size_t i) { evaluate_item(i, a); });

        // Merge in item order; only now does the assignment change.
        for (const Eval& e : evals_) {
            out.watch_replacements += e.replacements;
            if (e.kind == Eval::conflict) {
                out.conflicts.push_back(e.id);
            } else if (e.kind == Eval::propagate) {
                switch (a.assign_propagated(e.prop, level, e.deps, e.deps_overflow, e.id)) {
                    case AssignResult::newly_set:
                        frontier.next.push_back(e.prop);
                        ++out.propagations;
                        break;
                    case AssignResult::agreed:
                        break;
                    case AssignResult::conflict:
                        out.conflicts.push_back(e.id);
                        break;
                }
            }
        }
        frontier.advance();
        if (!out.conflicts.empty()) {
            out.violated = true;
            break;
        }
    }
    return out;
}

namespace {

struct NogoodState {
    std::size_t holds = 0, free = 0, dead = 0;
    Lit open;  // some unassigned literal, when free > 0
};

NogoodState classify(const NogoodStore& store, NogoodId id, const Assignment& a) {
    NogoodState s;
    for (Lit l : store.literals(id)) {
        if (a.unassigned(l.atom())) {
            ++s.free;
            s.open = l;
        } else if (a.has(l)) {
            ++s.holds;
        } else {
            ++s.dead;
        }
    }
    return s;
}

// Unit, but the proposal is barred by the truth guard: a legal resting
// state for a nogood.
bool passive_unit(const NogoodStore& store, NogoodId id, const NogoodState& s) {
    return s.free == 1 && s.dead == 0 && !store.may_assert(id, ~s.open);
}

}  // namespace

bool validate_watch_invariant(const NogoodStore& store, const Assignment& a, std::string* why) {
    for (NogoodId id = 0; id < static_cast<NogoodId>(store.size()); ++id) {
        if (store.length(id) < 2) continue;
        Lit w1 = store.watch1(id);
        Lit w2 = store.watch2(id);
        if (a.has(~w1) || a.has(~w2)) continue;
        if (a.unassigned(w1.atom()) && a.unassigned(w2.atom())) continue;
        if (passive_unit(store, id, classify(store, id, a))) continue;
        if (why) *why = "nogood " + std::to_string(id) + " breaks the watch discipline";
        return false;
    }
    return true;
}

bool validate_fixpoint(const NogoodStore& store, const Assignment& a, std::string* why) {
    auto complain = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (NogoodId id = 0; id < static_cast<NogoodId>(store.size()); ++id) {
        NogoodState s = classify(store, id, a);
        if (s.dead > 0) continue;
        if (s.free == 0) return complain("nogood " + std::to_string(id) + " is violated at fixpoint");
        if (s.free == 1 && !passive_unit(store, id, s))
            return complain("nogood " + std::to_string(id) + " is unit at fixpoint");
    }
    for (Lit sigma : store.static_units())
        if (!a.has(~sigma)) return complain("static unit nogood not enforced");
    return true;
}

}  // namespace aspine
