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

#include "aspine/program.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

namespace aspine {

bool Rule::body_overlaps() const {
    // Both bodies are sorted.
    auto i = pos_body.begin();
    auto j = neg_body.begin();
    while (i != pos_body.end() && j != neg_body.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i; else ++j;
    }
    return false;
}

AtomId GroundProgram::intern(std::string_view name) {
    auto it = by_name_.find(std::string(name));
    if (it != by_name_.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(Atom{id, std::string(name)});
    rules_of_.resize(atoms_.size());
    by_name_.emplace(std::string(name), id);
    return id;
}

AtomId GroundProgram::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? 0 : it->second;
}

void GroundProgram::add_rule(Rule r) {
    auto canonicalize = [](std::vector<AtomId>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    canonicalize(r.pos_body);
    canonicalize(r.neg_body);
    rules_of_.resize(atoms_.size());
    if (r.is_constraint()) {
        constraints_.push_back(std::move(r));
    } else {
        rules_of_[r.head].push_back(static_cast<std::uint32_t>(rules_.size()));
        rules_.push_back(std::move(r));
    }
}

namespace {

struct LineParser {
    std::string_view s;
    std::size_t pos = 0;
    int line;

    explicit LineParser(std::string_view text, int line_no) : s(text), line(line_no) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, what); }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos == s.size();
    }

    bool eat(std::string_view tok) {
        skip_ws();
        if (s.substr(pos, tok.size()) == tok) {
            pos += tok.size();
            return true;
        }
        return false;
    }

    static bool atom_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool atom_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    // Atom names follow [a-zA-Z_][a-zA-Z0-9_]* optionally extended with
    // balanced parenthesised argument groups, e.g. p, foo_1, at(3,4).
    // Commas inside parentheses belong to the name; outside they separate
    // body literals.
    std::string parse_atom() {
        skip_ws();
        if (pos == s.size() || !atom_start(s[pos])) fail("expected atom");
        std::size_t start = pos;
        while (pos < s.size() && atom_char(s[pos])) ++pos;
        while (pos < s.size() && s[pos] == '(') {
            int depth = 0;
            do {
                char c = s[pos];
                if (c == '(') ++depth;
                else if (c == ')') --depth;
                else if (!atom_char(c) && c != ',') fail("bad character in atom arguments");
                ++pos;
                if (pos == s.size() && depth > 0) fail("unbalanced parentheses in atom");
            } while (depth > 0);
            while (pos < s.size() && atom_char(s[pos])) ++pos;
        }
        return std::string(s.substr(start, pos - start));
    }

    // lit := atom | "not" atom
    std::pair<std::string, bool> parse_literal() {
        std::string name = parse_atom();
        if (name == "not") {
            std::string inner = parse_atom();
            return {inner, true};
        }
        return {name, false};
    }
};

}  // namespace

GroundProgram parse_program(std::istream& in) {
    GroundProgram prog;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto cut = raw.find('%'); cut != std::string::npos) raw.erase(cut);
        LineParser p(raw, line_no);
        if (p.at_end()) continue;

        Rule rule;
        bool is_constraint = p.eat(":-");
        if (!is_constraint) {
            rule.head = prog.intern(p.parse_atom());
            if (p.eat(".")) {
                if (!p.at_end()) p.fail("trailing characters after '.'");
                prog.add_rule(std::move(rule));
                continue;
            }
            if (!p.eat(":-")) p.fail("expected ':-' or '.' after head atom");
        }
        for (;;) {
            auto [name, negated] = p.parse_literal();
            AtomId a = prog.intern(name);
            (negated ? rule.neg_body : rule.pos_body).push_back(a);
            if (p.eat(",")) continue;
            if (p.eat(".")) break;
            p.fail("expected ',' or '.' in body");
        }
        if (!p.at_end()) p.fail("trailing characters after '.'");
        prog.add_rule(std::move(rule));
    }
    return prog;
}

GroundProgram parse_program(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_program(in);
}

std::string print_program(const GroundProgram& prog) {
    std::ostringstream out;
    auto body = [&](const Rule& r) {
        bool first = true;
        for (AtomId a : r.pos_body) {
            out << (first ? "" : ", ") << prog.name(a);
            first = false;
        }
        for (AtomId a : r.neg_body) {
            out << (first ? "" : ", ") << "not " << prog.name(a);
            first = false;
        }
    };
    for (const Rule& r : prog.rules()) {
        out << prog.name(r.head);
        if (!r.is_fact()) {
            out << " :- ";
            body(r);
        }
        out << ".\n";
    }
    for (const Rule& c : prog.constraints()) {
        out << ":- ";
        body(c);
        out << ".\n";
    }
    return out.str();
}

std::vector<AtomId> tp_step(const GroundProgram& prog, std::span<const AtomId> interp) {
    std::vector<bool> in(prog.atom_count() + 1, false);
    for (AtomId a : interp) in.at(a) = true;
    std::vector<AtomId> out;
    std::vector<bool> seen(prog.atom_count() + 1, false);
    for (const Rule& r : prog.rules()) {
        bool fires = true;
        for (AtomId a : r.pos_body)
            if (!in[a]) { fires = false; break; }
        if (fires)
            for (AtomId a : r.neg_body)
                if (in[a]) { fires = false; break; }
        if (fires && !seen[r.head]) {
            seen[r.head] = true;
            out.push_back(r.head);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> validate(const GroundProgram& prog) {
    std::vector<std::string> diags;
    if (prog.atom_count() == 0 && prog.rules().empty() && prog.constraints().empty()) {
        diags.push_back("empty program");
        return diags;
    }
    for (AtomId a = 1; a <= prog.atom_count(); ++a)
        if (prog.rules_of(a).empty())
            diags.push_back("atom " + prog.name(a) + " has no rules");
    for (std::size_t i = 0; i < prog.rules().size(); ++i)
        if (prog.rules()[i].body_overlaps())
            diags.push_back("rule " + std::to_string(i + 1) + " body is inconsistent");
    for (std::size_t i = 0; i < prog.constraints().size(); ++i)
        if (prog.constraints()[i].body_overlaps())
            diags.push_back("constraint " + std::to_string(i + 1) + " body is inconsistent");
    return diags;
}

}  // namespace aspine
