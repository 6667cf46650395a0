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

#ifndef ASPINE_NOGOOD_HPP
#define ASPINE_NOGOOD_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

namespace aspine {

/// Dense atom index. 0 is reserved ("no atom" / constraint head).
using AtomId = std::uint32_t;

/// A signed atom: T p or F p. Encoded as +atom / -atom in one int32.
class Lit {
public:
    constexpr Lit() = default;
    static constexpr Lit pos(AtomId a) { return Lit(static_cast<std::int32_t>(a)); }
    static constexpr Lit neg(AtomId a) { return Lit(-static_cast<std::int32_t>(a)); }
    static constexpr Lit from_code(std::int32_t c) { return Lit(c); }

    constexpr AtomId atom() const { return static_cast<AtomId>(code_ < 0 ? -code_ : code_); }
    constexpr bool positive() const { return code_ > 0; }
    constexpr bool valid() const { return code_ != 0; }
    constexpr std::int32_t code() const { return code_; }
    constexpr Lit operator~() const { return Lit(-code_); }

    friend constexpr bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
    friend constexpr bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }

    /// Canonical order inside a nogood: by atom id (a nogood never holds
    /// both signs of one atom, so this is a total order there).
    friend constexpr bool atom_less(Lit a, Lit b) {
        return a.atom() < b.atom() || (a.atom() == b.atom() && a.code_ < b.code_);
    }

    /// Index usable for per-literal tables: 2*atom + (1 if negative).
    constexpr std::size_t index() const { return 2 * static_cast<std::size_t>(atom()) + (code_ < 0 ? 1 : 0); }

private:
    constexpr explicit Lit(std::int32_t c) : code_(c) {}
    std::int32_t code_ = 0;
};

enum class NogoodOrigin : std::uint8_t { completion, constraint, learned };

/// Truth guard of a nogood: which atom, if any, this nogood may derive a
/// positive literal for during unit propagation. Deriving falsities is
/// always free; deriving a truth is reserved to the nogood that encodes
/// the rule-directed definition of that atom. This keeps every true atom
/// rule-supported without any dedicated stability check: abductive
/// directions ("the head is true, so some body must fire") stay passive
/// and surface as ordinary conflicts instead. Nogoods without completion
/// structure (plain constraint sets, tests) use kAnyTruth.
inline constexpr AtomId kAnyTruth = static_cast<AtomId>(-1);
inline constexpr AtomId kNoTruth = 0;

/// A duplicate-free set of signed literals that must not all hold together.
/// Literals are kept sorted by atom id. A candidate containing both T p and
/// F p is vacuous (it can never be violated) and make() refuses it.
class Nogood {
public:
    static std::optional<Nogood> make(std::vector<Lit> lits, NogoodOrigin origin,
                                      AtomId truth_guard = kAnyTruth) {
        std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) { return atom_less(a, b); });
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 1; i < lits.size(); ++i)
            if (lits[i].atom() == lits[i - 1].atom()) return std::nullopt;  // vacuous
        return Nogood(std::move(lits), origin, truth_guard);
    }

    const std::vector<Lit>& literals() const { return lits_; }
    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }
    Lit operator[](std::size_t i) const { return lits_[i]; }
    auto begin() const { return lits_.begin(); }
    auto end() const { return lits_.end(); }
    NogoodOrigin origin() const { return origin_; }

    AtomId truth_guard() const { return truth_guard_; }
    bool may_assert(Lit l) const {
        return !l.positive() || truth_guard_ == kAnyTruth || truth_guard_ == l.atom();
    }

    bool contains(Lit l) const {
        auto it = std::lower_bound(lits_.begin(), lits_.end(), l,
                                   [](Lit a, Lit b) { return atom_less(a, b); });
        return it != lits_.end() && *it == l;
    }

    friend bool operator==(const Nogood& a, const Nogood& b) { return a.lits_ == b.lits_; }

private:
    Nogood(std::vector<Lit> lits, NogoodOrigin origin, AtomId truth_guard)
        : lits_(std::move(lits)), origin_(origin), truth_guard_(truth_guard) {}
    std::vector<Lit> lits_;
    NogoodOrigin origin_;
    AtomId truth_guard_;
};

}  // namespace aspine

#endif
