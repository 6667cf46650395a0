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

#include "aspine/completion.hpp"

#include <cassert>
#include <sstream>

namespace aspine {

std::string AuxMap::name(AtomId a, const GroundProgram& prog) const {
    if (!is_aux(a)) return prog.name(a);
    const AuxInfo& ai = info(a);
    const char* tag = ai.kind == AuxKind::body ? "b_r" : ai.kind == AuxKind::pos_test ? "t_r" : "n_r";
    return std::string(tag) + "(" + std::to_string(ai.rule + 1) + ")";
}

struct CompletionBuilder {
    const GroundProgram& prog;
    Completion out;
    AtomId next_id;

    explicit CompletionBuilder(const GroundProgram& p)
        : prog(p), next_id(p.atom_count() + 1) {
        out.aux.first_aux_ = next_id;
    }

    AtomId fresh(std::uint32_t rule, AuxKind kind) {
        out.aux.info_.push_back({rule, kind});
        return next_id++;
    }

    void emit(std::vector<Lit> lits, NogoodOrigin origin, std::size_t& counter,
              AtomId truth_guard) {
        auto ng = Nogood::make(std::move(lits), origin, truth_guard);
        assert(ng.has_value() && !ng->empty());
        out.nogoods.push_back(std::move(*ng));
        ++counter;
    }

    // Truth guards: every nogood may freely derive falsities, but may
    // derive T x only for the atom x it defines in the rule direction
    // (b_r from its body tests, t_r/n_r from their body atoms or from a
    // fired b_r, a head atom from a fired rule). Everything else, in
    // particular "some body must fire" and "some blocked atom must be
    // true", is check-only.
    void compile_rule(std::uint32_t ri) {
        const Rule& r = prog.rules()[ri];
        AuxMap::RuleAux aux;
        aux.b = fresh(ri, AuxKind::body);
        auto& n_rule = out.counts.rule_nogoods;

        if (r.body_overlaps()) {
            // The rule can never fire: force b_r false and emit nothing else.
            aux.vacuous = true;
            emit({Lit::pos(aux.b)}, NogoodOrigin::completion, n_rule, kNoTruth);
            out.aux.per_rule_.push_back(aux);
            return;
        }

        const bool has_pos = !r.pos_body.empty();
        const bool has_neg = !r.neg_body.empty();
        if (has_pos) aux.t = fresh(ri, AuxKind::pos_test);
        if (has_neg) aux.n = fresh(ri, AuxKind::neg_test);

        if (has_pos && has_neg) {
            emit({Lit::neg(aux.b), Lit::pos(aux.t), Lit::pos(aux.n)}, NogoodOrigin::completion,
                 n_rule, aux.b);
            emit({Lit::pos(aux.b), Lit::neg(aux.t)}, NogoodOrigin::completion, n_rule, aux.t);
            emit({Lit::pos(aux.b), Lit::neg(aux.n)}, NogoodOrigin::completion, n_rule, aux.n);
        } else if (has_pos) {
            // n_r elided (true): b_r <-> t_r.
            emit({Lit::neg(aux.b), Lit::pos(aux.t)}, NogoodOrigin::completion, n_rule, aux.b);
            emit({Lit::pos(aux.b), Lit::neg(aux.t)}, NogoodOrigin::completion, n_rule, aux.t);
        } else if (has_neg) {
            // t_r elided (true): b_r <-> n_r.
            emit({Lit::neg(aux.b), Lit::pos(aux.n)}, NogoodOrigin::completion, n_rule, aux.b);
            emit({Lit::pos(aux.b), Lit::neg(aux.n)}, NogoodOrigin::completion, n_rule, aux.n);
        } else {
            // Fact: both tests elided, b_r is forced true.
            emit({Lit::neg(aux.b)}, NogoodOrigin::completion, n_rule, aux.b);
        }

        if (has_pos) {
            std::vector<Lit> all{Lit::neg(aux.t)};
            for (AtomId p : r.pos_body) {
                emit({Lit::pos(aux.t), Lit::neg(p)}, NogoodOrigin::completion, n_rule, kNoTruth);
                all.push_back(Lit::pos(p));
            }
            emit(std::move(all), NogoodOrigin::completion, n_rule, aux.t);
        }
        if (has_neg) {
            std::vector<Lit> all{Lit::neg(aux.n)};
            for (AtomId q : r.neg_body) {
                emit({Lit::pos(aux.n), Lit::pos(q)}, NogoodOrigin::completion, n_rule, kNoTruth);
                all.push_back(Lit::neg(q));
            }
            emit(std::move(all), NogoodOrigin::completion, n_rule, aux.n);
        }
        out.aux.per_rule_.push_back(aux);
    }

    void compile_atom(AtomId p) {
        auto& n_atom = out.counts.atom_nogoods;
        const auto& defs = prog.rules_of(p);
        if (defs.empty()) {
            emit({Lit::pos(p)}, NogoodOrigin::completion, n_atom, kNoTruth);
            return;
        }
        std::vector<Lit> support{Lit::pos(p)};
        for (std::uint32_t ri : defs) {
            AtomId b = out.aux.per_rule_[ri].b;
            emit({Lit::neg(p), Lit::pos(b)}, NogoodOrigin::completion, n_atom, p);
            support.push_back(Lit::neg(b));
        }
        emit(std::move(support), NogoodOrigin::completion, n_atom, kNoTruth);
    }

    void compile_constraint(const Rule& c) {
        if (c.body_overlaps()) return;  // vacuous: body can never be true
        std::vector<Lit> lits;
        for (AtomId p : c.pos_body) lits.push_back(Lit::pos(p));
        for (AtomId q : c.neg_body) lits.push_back(Lit::neg(q));
        emit(std::move(lits), NogoodOrigin::constraint, out.counts.constraint_nogoods, kNoTruth);
    }

    Completion run() {
        for (std::uint32_t ri = 0; ri < prog.rules().size(); ++ri) compile_rule(ri);
        for (AtomId p = 1; p <= prog.atom_count(); ++p) compile_atom(p);
        for (const Rule& c : prog.constraints()) compile_constraint(c);
        out.aux.total_ = next_id - 1;
        return std::move(out);
    }
};

Completion compile_completion(const GroundProgram& prog) {
    return CompletionBuilder(prog).run();
}

NogoodCensus nogood_census(const GroundProgram& prog) {
    NogoodCensus c;
    for (const Rule& r : prog.rules()) {
        if (r.body_overlaps()) {
            c.rule_nogoods += 1;
            continue;
        }
        const bool has_pos = !r.pos_body.empty();
        const bool has_neg = !r.neg_body.empty();
        if (has_pos && has_neg) c.rule_nogoods += 3;
        else if (has_pos || has_neg) c.rule_nogoods += 2;
        else c.rule_nogoods += 1;
        if (has_pos) c.rule_nogoods += r.pos_body.size() + 1;
        if (has_neg) c.rule_nogoods += r.neg_body.size() + 1;
    }
    for (AtomId p = 1; p <= prog.atom_count(); ++p)
        c.atom_nogoods += prog.rules_of(p).size() + 1;
    for (const Rule& cs : prog.constraints())
        if (!cs.body_overlaps()) c.constraint_nogoods += 1;
    return c;
}

std::string format_nogood(const Nogood& ng, const AuxMap& aux, const GroundProgram& prog) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (Lit l : ng) {
        if (!first) out << ", ";
        first = false;
        out << (l.positive() ? "T " : "F ") << aux.name(l.atom(), prog);
    }
    out << '}';
    return out.str();
}

std::string dump_nogoods(const Completion& comp, const GroundProgram& prog) {
    std::ostringstream out;
    for (const Nogood& ng : comp.nogoods) {
        out << format_nogood(ng, comp.aux, prog) << ' ';
        switch (ng.origin()) {
            case NogoodOrigin::completion: out << "completion"; break;
            case NogoodOrigin::constraint: out << "constraint"; break;
            case NogoodOrigin::learned: out << "learned"; break;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace aspine
