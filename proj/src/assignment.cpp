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

#include "aspine/assignment.hpp"

#include <bit>
#include <cassert>
#include <sstream>

namespace aspine {

DepsMap::DepsMap(AtomId total_atoms, std::uint32_t words)
    : words_(words),
      bits_(static_cast<std::size_t>(total_atoms + 1) * words, 0),
      overflow_(total_atoms + 1, 0) {
    assert(words_ >= 1);
}

void DepsMap::clear_atom(AtomId a) {
    auto* w = bits_.data() + static_cast<std::size_t>(a) * words_;
    std::fill(w, w + words_, 0);
    overflow_[a] = 0;
}

void DepsMap::set(AtomId a, std::span<const std::uint64_t> bits, bool overflow) {
    assert(bits.size() == words_);
    auto* w = bits_.data() + static_cast<std::size_t>(a) * words_;
    std::copy(bits.begin(), bits.end(), w);
    overflow_[a] = overflow ? 1 : 0;
}

void DepsMap::set_decision(AtomId a, std::uint32_t level) {
    clear_atom(a);
    assert(level >= 2);
    const std::uint32_t bit = level - 1;
    if (bit >= capacity_levels()) {
        overflow_[a] = 1;
        return;
    }
    bits_[static_cast<std::size_t>(a) * words_ + bit / 64] |= 1ull << (bit % 64);
}

void DepsMap::set_all_decision_levels(AtomId a, std::uint32_t cdl) {
    clear_atom(a);
    auto* w = bits_.data() + static_cast<std::size_t>(a) * words_;
    for (std::uint32_t level = 2; level <= cdl; ++level) {
        const std::uint32_t bit = level - 1;
        if (bit >= capacity_levels()) {
            overflow_[a] = 1;
            return;
        }
        w[bit / 64] |= 1ull << (bit % 64);
    }
}

void bitmap_or(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    assert(dst.size() == src.size());
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

bool bitmap_any(std::span<const std::uint64_t> bits) {
    for (std::uint64_t w : bits)
        if (w) return true;
    return false;
}

bool bitmap_test_level(std::span<const std::uint64_t> bits, std::uint32_t level) {
    assert(level >= 1);
    const std::uint32_t bit = level - 1;
    if (bit / 64 >= bits.size()) return false;
    return (bits[bit / 64] >> (bit % 64)) & 1;
}

std::uint32_t bitmap_highest_level_below(std::span<const std::uint64_t> bits, std::uint32_t below) {
    for (std::uint32_t level = below; level-- > 1;)
        if (bitmap_test_level(bits, level)) return level;
    return 0;
}

std::vector<std::uint32_t> bitmap_levels(std::span<const std::uint64_t> bits) {
    std::vector<std::uint32_t> levels;
    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = bits[w];
        while (word) {
            const int b = std::countr_zero(word);
            levels.push_back(static_cast<std::uint32_t>(64 * w + b) + 1);
            word &= word - 1;
        }
    }
    return levels;
}

Assignment::Assignment(AtomId total_atoms, std::uint32_t deps_words)
    : total_atoms_(total_atoms),
      cells_(total_atoms + 1, 0),
      trail_pos_(total_atoms + 1, 0),
      reason_(total_atoms + 1),
      level_decisions_(2, Lit{}),
      deps_(total_atoms, deps_words) {
    trail_.reserve(total_atoms);
}

AssignResult Assignment::try_set(Lit l, std::uint32_t level) {
    assert(level >= 1 && level <= cdl_);
    std::int32_t& cell = cells_[l.atom()];
    if (cell != 0) return (cell > 0) == l.positive() ? AssignResult::agreed : AssignResult::conflict;
    cell = l.positive() ? static_cast<std::int32_t>(level) : -static_cast<std::int32_t>(level);
    trail_pos_[l.atom()] = trail_.size();
    trail_.push_back({l, level});
    return AssignResult::newly_set;
}

AssignResult Assignment::assign_unit(Lit l) {
    AssignResult r = try_set(l, 1);
    if (r == AssignResult::newly_set) {
        reason_[l.atom()] = Reason::make_unit();
        deps_.clear_atom(l.atom());
    }
    return r;
}

AssignResult Assignment::assign_propagated(Lit l, std::uint32_t level,
                                           std::span<const std::uint64_t> deps,
                                           bool deps_overflow, NogoodId antecedent) {
    AssignResult r = try_set(l, level);
    if (r == AssignResult::newly_set) {
        reason_[l.atom()] = Reason::make_propagated(antecedent);
        deps_.set(l.atom(), deps, deps_overflow);
    }
    return r;
}

AssignResult Assignment::assign_completion(Lit l) {
    AssignResult r = try_set(l, cdl_);
    if (r == AssignResult::newly_set) {
        reason_[l.atom()] = Reason::make_completion();
        deps_.set_all_decision_levels(l.atom(), cdl_);
    }
    return r;
}

void Assignment::push_decision(Lit l) {
    assert(unassigned(l.atom()));
    ++cdl_;
    level_decisions_.push_back(l);
    AssignResult r = try_set(l, cdl_);
    assert(r == AssignResult::newly_set);
    (void)r;
    reason_[l.atom()] = Reason::make_decision();
    deps_.set_decision(l.atom(), cdl_);
}

void Assignment::backjump(std::uint32_t target_level) {
    assert(target_level >= 1 && target_level < cdl_);
    while (!trail_.empty() && trail_.back().level > target_level) {
        const AtomId a = trail_.back().lit.atom();
        cells_[a] = 0;
        trail_pos_[a] = 0;
        reason_[a] = Reason{};
        deps_.clear_atom(a);
        trail_.pop_back();
    }
    level_decisions_.resize(target_level + 1);
    cdl_ = target_level;
}

std::vector<Lit> Assignment::decisions() const {
    std::vector<Lit> ds;
    for (std::uint32_t level = 2; level <= cdl_; ++level) ds.push_back(level_decisions_[level]);
    return ds;
}

std::string Assignment::debug_trail(const std::function<std::string(AtomId)>& namer) const {
    std::ostringstream out;
    for (const TrailEntry& e : trail_) {
        out << (e.lit.positive() ? "T " : "F ") << namer(e.lit.atom()) << '@' << e.level;
        switch (reason_[e.lit.atom()].kind) {
            case Reason::decision: out << " (decision)"; break;
            case Reason::unit_input: out << " (unit)"; break;
            case Reason::completion: out << " (completion)"; break;
            case Reason::propagated: out << " <- " << reason_[e.lit.atom()].antecedent; break;
            case Reason::none: out << " (?)"; break;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace aspine
