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
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bidicache/cache_space.hpp"
#include "bidicache/sketch.hpp"
#include "bidicache/types.hpp"

namespace bidicache {

enum class PolicyKind { BiDiFilter, BiDiFilterUnited, Demote, NaiveLru, Promote };
enum class TieBreak { Admit, Reject };

std::string_view to_string(PolicyKind kind);
std::string_view to_string(TieBreak tie);
/// Accepts the CLI tokens: bidifilter, bidifilter-united, demote, naive-lru, promote.
PolicyKind parse_policy_kind(std::string_view token);
TieBreak parse_tie_break(std::string_view token);

/// Which multilevel policy to run and with what parameters.
struct PolicySpec {
    PolicyKind kind = PolicyKind::BiDiFilter;
    /// L1..LN in items; N >= 2.
    std::vector<std::size_t> level_capacities;
    /// Share of L1 given to the Window space (BiDiFilter only).
    double window_fraction = 0.5;
    TieBreak tie_break = TieBreak::Admit;
    /// Promote only: probability that an L2 hit moves to L1.
    double promote_p = 0.5;
    /// Promote only: probability that an L1 victim is kept in L2.
    double promote_q = 0.5;
    std::uint64_t rng_seed = 0;
    double protected_fraction = CacheSpace::kDefaultProtectedFraction;
    /// Defaults to SketchConfig::for_capacity(total capacity).
    std::optional<SketchConfig> sketch;

    std::size_t levels() const noexcept { return level_capacities.size(); }
    std::size_t total_capacity() const noexcept;
    /// round(window_fraction * |L1|); BiDiFilterUnited gives all of L1 to one LRU.
    std::size_t window_capacity() const;
    std::size_t veterans_capacity() const;
    SketchConfig sketch_config() const;

    /// Throws std::invalid_argument on out-of-range parameters.
    void validate() const;
};

enum class HitClass { HitL1Window, HitL1Veterans, HitLevel, Miss };

struct LevelWrites {
    std::size_t level;  // 1-based
    std::uint32_t count;

    friend bool operator==(const LevelWrites&, const LevelWrites&) = default;
};

/// Classification and write side effects of one access.
struct AccessOutcome {
    HitClass classification = HitClass::Miss;
    /// 1 for L1 hits, i for HitLevel, 0 for misses.
    std::size_t level = 0;
    /// Sorted by level, only levels that were written.
    std::vector<LevelWrites> writes;

    void reset() noexcept;
    void add_write(std::size_t level_index);
    std::uint32_t writes_at(std::size_t level_index) const noexcept;

    friend bool operator==(const AccessOutcome&, const AccessOutcome&) = default;
};

/// One frequency comparison made by a BiDiFilter policy.
struct FilterDecision {
    enum class Direction { Admission, Promotion };
    Direction direction;
    /// Level the candidate would enter.
    std::size_t target_level;
    ItemKey candidate;
    ItemKey victim;
    std::uint32_t candidate_estimate;
    std::uint32_t victim_estimate;
    TieBreak tie_break;
    bool admitted;
};

using DecisionObserver = std::function<void(const FilterDecision&)>;

/// A multilevel exclusive cache driven one access at a time.
class Policy {
public:
    virtual ~Policy() = default;

    /// Applies one request. The returned reference stays valid until the next call.
    virtual const AccessOutcome& access(ItemKey key) = 0;

    virtual std::string_view name() const = 0;
    virtual std::size_t level_count() const = 0;

    /// Every managed space tagged with its 1-based level.
    virtual std::vector<std::pair<std::size_t, const CacheSpace*>> spaces() const = 0;

    virtual const FrequencySketch* sketch() const { return nullptr; }

    /// Level holding `key`, or 0 if the key is not cached.
    std::size_t level_of(ItemKey key) const;

    /// Checks capacity and SLRU structure of every space plus exclusivity
    /// across spaces. Throws PolicyLogicError on violation. O(total capacity).
    void check_invariants() const;

    void set_decision_observer(DecisionObserver observer) { observer_ = std::move(observer); }

protected:
    void notify(const FilterDecision& decision) const {
        if (observer_) {
            observer_(decision);
        }
    }

private:
    DecisionObserver observer_;
};

/// Builds the policy described by `spec`. BiDiFilter with more than two
/// levels uses the N-level engine.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec);

/// Forces the N-level BiDiFilter engine, also for N = 2.
std::unique_ptr<Policy> make_nlevel_bidi_filter(const PolicySpec& spec);

}  // namespace bidicache
