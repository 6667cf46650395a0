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

#ifndef ASPINE_ORACLE_HPP
#define ASPINE_ORACLE_HPP

#include <optional>
#include <span>
#include <vector>

#include "aspine/program.hpp"

// Brute-force reference semantics. Everything here is deliberately naive:
// answer sets are checked straight from the definition (reduct + least
// model), so the fast solver can be validated against it.

namespace aspine {

/// Negation-free program obtained from a program relative to a candidate
/// interpretation M: rules whose negative body intersects M are deleted,
/// the rest keep only their positive body. Constraints are treated the
/// same way and checked against the least model afterwards.
struct ReductProgram {
    std::vector<Rule> rules;        // neg_body empty
    std::vector<Rule> constraints;  // neg_body empty
};

ReductProgram reduct(const GroundProgram& prog, std::span<const AtomId> m);

/// Least model of a negation-free program, via iterated immediate
/// consequences from the empty set. Returns nullopt when a surviving
/// constraint body is contained in the fixpoint.
std::optional<std::vector<AtomId>> least_model(const ReductProgram& reduct);

/// True iff m (sorted atom ids) is an answer set: least_model(reduct(m))
/// exists and equals m.
bool is_answer_set(const GroundProgram& prog, std::span<const AtomId> m);

/// All answer sets of a small program (at most 22 atoms), each a sorted
/// atom id vector; the family itself is sorted lexicographically.
std::vector<std::vector<AtomId>> enumerate_answer_sets(const GroundProgram& prog);

}  // namespace aspine

#endif
