// Copyright 2026 The bidicache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bidicache/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bidicache/baselines.hpp"
#include "bidicache/bidi_filter.hpp"

namespace bidicache {

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::BiDiFilter: return "bidifilter";
        case PolicyKind::BiDiFilterUnited: return "bidifilter-united";
        case PolicyKind::Demote: return "demote";
        case PolicyKind::NaiveLru: return "naive-lru";
        case PolicyKind::Promote: return "promote";
    }
    return "unknown";
}

std::string_view to_string(TieBreak tie) {
    return tie == TieBreak::Admit ? "admit" : "reject";
}

PolicyKind parse_policy_kind(std::string_view token) {
    for (auto kind : {PolicyKind::BiDiFilter, PolicyKind::BiDiFilterUnited, PolicyKind::Demote, PolicyKind::NaiveLru,
                      PolicyKind::Promote}) {
        if (token == to_string(kind)) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown policy '" + std::string(token) + "'");
}

TieBreak parse_tie_break(std::string_view token) {
    if (token == "admit") {
        return TieBreak::Admit;
    }
    if (token == "reject") {
        return TieBreak::Reject;
    }
    throw std::invalid_argument("tie-break must be admit or reject, got '" + std::string(token) + "'");
}

// ---------------------------------------------------------------------------

std::size_t PolicySpec::total_capacity() const noexcept {
    return std::accumulate(level_capacities.begin(), level_capacities.end(), std::size_t{0});
}

std::size_t PolicySpec::window_capacity() const {
    const std::size_t l1 = level_capacities.at(0);
    if (kind == PolicyKind::BiDiFilterUnited) {
        return l1;
    }
    const auto w = static_cast<std::size_t>(std::llround(window_fraction * static_cast<double>(l1)));
    return std::min(w, l1);
}

std::size_t PolicySpec::veterans_capacity() const {
    return level_capacities.at(0) - window_capacity();
}

SketchConfig PolicySpec::sketch_config() const {
    if (sketch) {
        return *sketch;
    }
    return SketchConfig::for_capacity(total_capacity(), derive_seed(rng_seed, 0x736b65746368ULL));
}

void PolicySpec::validate() const {
    if (level_capacities.size() < 2) {
        throw std::invalid_argument("policy: at least two levels are required");
    }
    for (std::size_t i = 0; i < level_capacities.size(); ++i) {
        if (level_capacities[i] == 0) {
            throw std::invalid_argument("policy: level L" + std::to_string(i + 1) + " has zero capacity");
        }
    }
    if (!(window_fraction >= 0.0 && window_fraction <= 1.0)) {
        throw std::invalid_argument("policy: window fraction outside [0, 1]");
    }
    if (!(promote_p >= 0.0 && promote_p <= 1.0) || !(promote_q >= 0.0 && promote_q <= 1.0)) {
        throw std::invalid_argument("policy: promote probabilities must lie in [0, 1]");
    }
    if (!(protected_fraction >= 0.0 && protected_fraction <= 1.0)) {
        throw std::invalid_argument("policy: protected fraction outside [0, 1]");
    }
    if (kind == PolicyKind::BiDiFilter || kind == PolicyKind::BiDiFilterUnited) {
        sketch_config().validate();
    } else if (level_capacities.size() != 2) {
        throw std::invalid_argument("policy: " + std::string(to_string(kind)) + " supports exactly two levels");
    }
}

// ---------------------------------------------------------------------------

void AccessOutcome::reset() noexcept {
    classification = HitClass::Miss;
    level = 0;
    writes.clear();
}

void AccessOutcome::add_write(std::size_t level_index) {
    auto it = std::lower_bound(writes.begin(), writes.end(), level_index,
                               [](const LevelWrites& w, std::size_t l) { return w.level < l; });
    if (it != writes.end() && it->level == level_index) {
        ++it->count;
    } else {
        writes.insert(it, LevelWrites{level_index, 1});
    }
}

std::uint32_t AccessOutcome::writes_at(std::size_t level_index) const noexcept {
    for (const auto& w : writes) {
        if (w.level == level_index) {
            return w.count;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------

std::size_t Policy::level_of(ItemKey key) const {
    for (const auto& [level, space] : spaces()) {
        if (space->contains(key)) {
            return level;
        }
    }
    return 0;
}

void Policy::check_invariants() const {
    const auto all = spaces();
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i].second->check_invariants();
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (const auto k = all[i].second->first_shared_key(*all[j].second)) {
                throw PolicyLogicError("exclusivity violated: key " + std::to_string(*k) + " in both " +
                                       all[i].second->name() + " and " + all[j].second->name());
            }
        }
    }
}

// ---------------------------------------------------------------------------

std::unique_ptr<Policy> make_policy(const PolicySpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case PolicyKind::BiDiFilter:
        case PolicyKind::BiDiFilterUnited:
            if (spec.levels() == 2) {
                return std::make_unique<BiDiFilter>(spec);
            }
            return std::make_unique<BiDiFilterNLevel>(spec);
        case PolicyKind::Demote: return std::make_unique<DemotePolicy>(spec);
        case PolicyKind::NaiveLru: return std::make_unique<NaiveLruPolicy>(spec);
        case PolicyKind::Promote: return std::make_unique<PromotePolicy>(spec);
    }
    throw std::invalid_argument("unknown policy kind");
}

std::unique_ptr<Policy> make_nlevel_bidi_filter(const PolicySpec& spec) {
    return std::make_unique<BiDiFilterNLevel>(spec);
}

}  // namespace bidicache
