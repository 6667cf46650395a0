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

#include "aspine/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace aspine {

namespace {

bool contains(std::span<const AtomId> sorted, AtomId a) {
    return std::binary_search(sorted.begin(), sorted.end(), a);
}

bool intersects(std::span<const AtomId> sorted_a, std::span<const AtomId> sorted_b) {
    auto i = sorted_a.begin();
    auto j = sorted_b.begin();
    while (i != sorted_a.end() && j != sorted_b.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i; else ++j;
    }
    return false;
}

}  // namespace

ReductProgram reduct(const GroundProgram& prog, std::span<const AtomId> m) {
    ReductProgram out;
    auto strip = [](const Rule& r) {
        Rule s;
        s.head = r.head;
        s.pos_body = r.pos_body;
        return s;
    };
    for (const Rule& r : prog.rules())
        if (!intersects(r.neg_body, m)) out.rules.push_back(strip(r));
    for (const Rule& c : prog.constraints())
        if (!intersects(c.neg_body, m)) out.constraints.push_back(strip(c));
    return out;
}

std::optional<std::vector<AtomId>> least_model(const ReductProgram& reduct) {
    std::vector<AtomId> lm;
    for (;;) {
        std::vector<AtomId> next;
        for (const Rule& r : reduct.rules) {
            bool fires = true;
            for (AtomId a : r.pos_body)
                if (!contains(lm, a)) { fires = false; break; }
            if (fires && !contains(lm, r.head) && !contains(next, r.head)) {
                next.push_back(r.head);
                std::sort(next.begin(), next.end());
            }
        }
        if (next.empty()) break;
        std::vector<AtomId> merged;
        std::merge(lm.begin(), lm.end(), next.begin(), next.end(), std::back_inserter(merged));
        lm = std::move(merged);
    }
    for (const Rule& c : reduct.constraints) {
        bool fires = true;
        for (AtomId a : c.pos_body)
            if (!contains(lm, a)) { fires = false; break; }
        if (fires) return std::nullopt;
    }
    return lm;
}

bool is_answer_set(const GroundProgram& prog, std::span<const AtomId> m) {
    auto lm = least_model(reduct(prog, m));
    if (!lm) return false;
    return lm->size() == m.size() && std::equal(lm->begin(), lm->end(), m.begin());
}

std::vector<std::vector<AtomId>> enumerate_answer_sets(const GroundProgram& prog) {
    const AtomId n = prog.atom_count();
    if (n > 22) throw std::invalid_argument("enumerate_answer_sets: more than 22 atoms");

    // Precompute rule bodies as bitmasks over atom ids (bit a-1 for atom a).
    struct MaskRule {
        std::uint32_t head, pos, neg;
    };
    auto mask_of = [](std::span<const AtomId> atoms) {
        std::uint32_t m = 0;
        for (AtomId a : atoms) m |= 1u << (a - 1);
        return m;
    };
    std::vector<MaskRule> rules, constraints;
    for (const Rule& r : prog.rules())
        rules.push_back({1u << (r.head - 1), mask_of(r.pos_body), mask_of(r.neg_body)});
    for (const Rule& c : prog.constraints())
        constraints.push_back({0, mask_of(c.pos_body), mask_of(c.neg_body)});

    std::vector<std::vector<AtomId>> family;
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t cand = 0; cand < limit; ++cand) {
        const auto m = static_cast<std::uint32_t>(cand);
        // Cheap pruning: M must be a model of the program before the
        // reduct is worth computing.
        bool model = true;
        for (const MaskRule& r : rules)
            if ((r.pos & m) == r.pos && (r.neg & m) == 0 && (r.head & m) == 0) { model = false; break; }
        if (model)
            for (const MaskRule& c : constraints)
                if ((c.pos & m) == c.pos && (c.neg & m) == 0) { model = false; break; }
        if (!model) continue;

        // Least model of the reduct w.r.t. M.
        std::uint32_t lm = 0;
        for (bool changed = true; changed;) {
            changed = false;
            for (const MaskRule& r : rules)
                if ((r.neg & m) == 0 && (r.pos & lm) == r.pos && (r.head & lm) == 0) {
                    lm |= r.head;
                    changed = true;
                }
        }
        if (lm != m) continue;

        std::vector<AtomId> atoms;
        for (AtomId a = 1; a <= n; ++a)
            if (m & (1u << (a - 1))) atoms.push_back(a);
        family.push_back(std::move(atoms));
    }
    std::sort(family.begin(), family.end());
    return family;
}

}  // namespace aspine
