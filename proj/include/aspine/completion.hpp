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

#ifndef ASPINE_COMPLETION_HPP
#define ASPINE_COMPLETION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aspine/nogood.hpp"
#include "aspine/program.hpp"

// Compiles a ground program into completion nogoods. Every rule r gets a
// body atom b_r and, for each nonempty body part, test atoms t_r / n_r:
//
//   b_r <-> t_r & n_r      t_r <-> body+(r)      n_r <-> not body-(r)
//   p   <-> b_r1 | ... | b_rk          (over the rules with head p)
//
// Empty body parts elide the corresponding test atom and substitute its
// forced value:
//   - body+ and body- empty (fact):  the rule side collapses to {F b_r}.
//   - body+ empty:                   t_r elided, b_r <-> n_r directly.
//   - body- empty:                   n_r elided, b_r <-> t_r directly.
//   - body+ and body- overlap:       the rule can never fire; only the
//                                    unit {T b_r} is emitted (no t/n).
// Nogoods with complementary literals are vacuous and dropped.

namespace aspine {

enum class AuxKind : std::uint8_t { body, pos_test, neg_test };

/// Auxiliary-atom bookkeeping: per rule the ids of b_r / t_r / n_r (0 when
/// elided) and the reverse map from aux id to (rule, kind).
class AuxMap {
public:
    struct RuleAux {
        AtomId b = 0;
        AtomId t = 0;  // 0 when body+ is empty or the rule is vacuous
        AtomId n = 0;  // 0 when body- is empty or the rule is vacuous
        bool vacuous = false;
    };
    struct AuxInfo {
        std::uint32_t rule;
        AuxKind kind;
    };

    const RuleAux& of_rule(std::uint32_t rule) const { return per_rule_.at(rule); }
    std::size_t rule_count() const { return per_rule_.size(); }

    AtomId first_aux() const { return first_aux_; }
    /// Program atoms plus auxiliary atoms.
    AtomId total_atoms() const { return total_; }
    bool is_aux(AtomId a) const { return a >= first_aux_ && a < total_ + 1; }
    const AuxInfo& info(AtomId aux) const { return info_.at(aux - first_aux_); }

    /// Display name: program atoms by their own name, aux atoms as
    /// b_r(i) / t_r(i) / n_r(i) with 1-based rule index.
    std::string name(AtomId a, const GroundProgram& prog) const;

private:
    friend struct CompletionBuilder;
    std::vector<RuleAux> per_rule_;
    std::vector<AuxInfo> info_;
    AtomId first_aux_ = 0;
    AtomId total_ = 0;
};

/// Predicted nogood counts per category (closed form, no compilation).
struct NogoodCensus {
    std::size_t rule_nogoods = 0;
    std::size_t atom_nogoods = 0;
    std::size_t constraint_nogoods = 0;
    std::size_t total() const { return rule_nogoods + atom_nogoods + constraint_nogoods; }
    friend bool operator==(const NogoodCensus&, const NogoodCensus&) = default;
};

struct Completion {
    std::vector<Nogood> nogoods;
    AuxMap aux;
    NogoodCensus counts;  // actual per-category counts of `nogoods`
};

Completion compile_completion(const GroundProgram& prog);

NogoodCensus nogood_census(const GroundProgram& prog);

/// Debug dump, one nogood per line: `{F a, T b_r(1)} completion`.
std::string dump_nogoods(const Completion& comp, const GroundProgram& prog);
std::string format_nogood(const Nogood& ng, const AuxMap& aux, const GroundProgram& prog);

}  // namespace aspine

#endif
