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

#ifndef ASPINE_PROGRAM_HPP
#define ASPINE_PROGRAM_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aspine/nogood.hpp"

namespace aspine {

struct Atom {
    AtomId id = 0;
    std::string name;
};

/// One ground rule "head :- pos_body, not neg_body". head == 0 marks a
/// constraint. Bodies are sorted, duplicate-free atom id arrays; the two
/// sets may overlap (such a rule can never fire but is kept as written).
struct Rule {
    AtomId head = 0;
    std::vector<AtomId> pos_body;
    std::vector<AtomId> neg_body;

    bool is_constraint() const { return head == 0; }
    bool is_fact() const { return head != 0 && pos_body.empty() && neg_body.empty(); }
    bool body_overlaps() const;
};

class GroundProgram {
public:
    GroundProgram() { atoms_.push_back(Atom{0, ""}); }

    /// Returns the id of `name`, interning it in first-occurrence order.
    AtomId intern(std::string_view name);
    /// Returns the id of `name` or 0 if unknown.
    AtomId find(std::string_view name) const;

    void add_rule(Rule r);

    AtomId atom_count() const { return static_cast<AtomId>(atoms_.size() - 1); }
    const Atom& atom(AtomId id) const { return atoms_.at(id); }
    const std::string& name(AtomId id) const { return atoms_.at(id).name; }

    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<Rule>& constraints() const { return constraints_; }
    /// Indices into rules() of the rules with head p.
    const std::vector<std::uint32_t>& rules_of(AtomId p) const { return rules_of_.at(p); }

private:
    std::vector<Atom> atoms_;  // [0] is the reserved null atom
    std::vector<Rule> rules_;
    std::vector<Rule> constraints_;
    std::vector<std::vector<std::uint32_t>> rules_of_;
    std::unordered_map<std::string, AtomId> by_name_;
};

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

/// Parses the canonical line format: `a.`, `a :- b, not c.`, `:- a, b.`,
/// `%` comments. Throws ParseError with the offending line number.
GroundProgram parse_program(std::istream& in);
GroundProgram parse_program(std::string_view text);

/// Prints a program in the canonical format, one statement per line.
std::string print_program(const GroundProgram& prog);

/// Immediate consequence operator: heads of rules whose positive body is
/// contained in `interp` and whose negative body misses it entirely.
/// `interp` must be a sorted set of atom ids; the result is sorted.
std::vector<AtomId> tp_step(const GroundProgram& prog, std::span<const AtomId> interp);

/// Structural diagnostics: atoms with no rules, inconsistent rule bodies,
/// empty program. Purely informational.
std::vector<std::string> validate(const GroundProgram& prog);

}  // namespace aspine

#endif
