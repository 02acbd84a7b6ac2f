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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bidicache/cache_space.hpp"
#include "bidicache/policy.hpp"
#include "bidicache/sketch.hpp"

namespace bidicache {

/// Two-level bidirectional frequency-filtered cache.
///
/// L1 is split into a Window space (fresh misses) and a Veterans space (items
/// promoted from L2); both are LRU. L2 is an SLRU main cache. Window victims
/// enter L2 only if their frequency estimate beats the L2 victim, and L2 hits
/// move up to Veterans only if they beat the Veterans victim, in which case
/// the Veterans victim drops into L2 unconditionally.
///
/// A space that is not yet full admits without consulting the sketch.
///
/// Degenerate splits:
///  - no Window: a miss competes for Veterans first, then for L2, and the
///    displaced Veterans victim goes through the L2 admission filter;
///  - no Veterans (also the united-L1 variant): L2 hits compete for the Window
///    and the displaced Window victim takes the freed L2 slot.
class BiDiFilter final : public Policy {
public:
    explicit BiDiFilter(const PolicySpec& spec);

    const AccessOutcome& access(ItemKey key) override;
    std::string_view name() const override { return name_; }
    std::size_t level_count() const override { return 2; }
    std::vector<std::pair<std::size_t, const CacheSpace*>> spaces() const override;
    const FrequencySketch* sketch() const override { return &sketch_; }

    const CacheSpace& window() const noexcept { return window_; }
    const CacheSpace& veterans() const noexcept { return veterans_; }
    const CacheSpace& main_cache() const noexcept { return main_; }

private:
    void on_miss(ItemKey key);
    void on_l2_hit(ItemKey key);
    void admit_to_main(ItemKey candidate);
    bool wins(ItemKey candidate, ItemKey victim, std::size_t target_level, FilterDecision::Direction dir);

    std::string name_;
    TieBreak tie_;
    FrequencySketch sketch_;
    CacheSpace window_;
    CacheSpace veterans_;
    CacheSpace main_;
    AccessOutcome out_;
};

/// BiDiFilter generalised to N levels with a filter between each adjacent
/// pair. A window victim cascades downwards: each admission displaces the
/// level's victim, which becomes the candidate for the next level; a rejected
/// candidate is dropped. A hit at L_i (i > 1) competes with the victim of
/// L_{i-1} and, on success, swaps places with it.
class BiDiFilterNLevel final : public Policy {
public:
    explicit BiDiFilterNLevel(const PolicySpec& spec);

    const AccessOutcome& access(ItemKey key) override;
    std::string_view name() const override { return name_; }
    std::size_t level_count() const override { return lower_.size() + 1; }
    std::vector<std::pair<std::size_t, const CacheSpace*>> spaces() const override;
    const FrequencySketch* sketch() const override { return &sketch_; }

    const CacheSpace& window() const noexcept { return window_; }
    const CacheSpace& veterans() const noexcept { return veterans_; }
    /// Level `level` >= 2.
    const CacheSpace& level(std::size_t level) const { return lower_.at(level - 2); }

private:
    CacheSpace& lower(std::size_t level) { return lower_[level - 2]; }
    void on_miss(ItemKey key);
    void on_lower_hit(ItemKey key, std::size_t level);
    void cascade(ItemKey candidate, std::size_t level);
    bool wins(ItemKey candidate, ItemKey victim, std::size_t target_level, FilterDecision::Direction dir);

    std::string name_;
    TieBreak tie_;
    FrequencySketch sketch_;
    CacheSpace window_;
    CacheSpace veterans_;
    std::vector<CacheSpace> lower_;
    AccessOutcome out_;
};

}  // namespace bidicache
