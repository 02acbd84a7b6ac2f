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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "bidicache/bidi_filter.hpp"
#include "bidicache/policy.hpp"

namespace bidicache {
namespace {

using Writes = std::vector<LevelWrites>;

// Wide sketch with no halving inside these short traces, so estimates equal
// exact counts (capped at 10).
SketchConfig exact_sketch() {
    SketchConfig c;
    c.tracked_capacity = 100;
    c.sample_size = 1000;
    c.depth = 4;
    c.width = 4096;
    c.seed = 17;
    return c;
}

PolicySpec bidi_spec(std::vector<std::size_t> caps, double window = 0.5, TieBreak tie = TieBreak::Admit) {
    PolicySpec s;
    s.kind = PolicyKind::BiDiFilter;
    s.level_capacities = std::move(caps);
    s.window_fraction = window;
    s.tie_break = tie;
    s.sketch = exact_sketch();
    return s;
}

struct Recorder {
    std::vector<FilterDecision> decisions;
    DecisionObserver observer() {
        return [this](const FilterDecision& d) { decisions.push_back(d); };
    }
};

TEST(BiDiFilter, SplitsL1ByWindowFraction) {
    BiDiFilter p(bidi_spec({10, 100}, 0.3));
    EXPECT_EQ(p.window().capacity(), 3u);
    EXPECT_EQ(p.veterans().capacity(), 7u);
    EXPECT_EQ(p.main_cache().capacity(), 100u);
    EXPECT_EQ(p.main_cache().kind(), EvictionKind::Slru);
}

TEST(BiDiFilter, ColdMissGoesToWindowOnly) {
    BiDiFilter p(bidi_spec({2, 2}));
    const auto& out = p.access(1);
    EXPECT_EQ(out.classification, HitClass::Miss);
    EXPECT_EQ(out.writes, (Writes{{1, 1}}));
    EXPECT_TRUE(p.window().contains(1));
}

TEST(BiDiFilter, WindowHitHasNoWrites) {
    BiDiFilter p(bidi_spec({2, 2}));
    p.access(1);
    const auto& out = p.access(1);
    EXPECT_EQ(out.classification, HitClass::HitL1Window);
    EXPECT_TRUE(out.writes.empty());
}

// L1 = 2 (window 1, veterans 1), L2 = 1.
// v v v -> v in window with estimate 3; c evicts v into the empty L2;
// c c -> estimate 3; x evicts candidate c, which ties with L2 victim v.
void build_tie(BiDiFilter& p) {
    for (ItemKey k : {10, 10, 10, 20, 20, 20}) {
        p.access(k);
    }
    ASSERT_TRUE(p.main_cache().contains(10));
    ASSERT_TRUE(p.window().contains(20));
}

TEST(BiDiFilter, TieAdmitsCandidateIntoL2) {
    BiDiFilter p(bidi_spec({2, 1}, 0.5, TieBreak::Admit));
    build_tie(p);
    Recorder rec;
    p.set_decision_observer(rec.observer());
    const auto& out = p.access(30);
    EXPECT_EQ(out.classification, HitClass::Miss);
    EXPECT_EQ(out.writes, (Writes{{1, 1}, {2, 1}}));
    ASSERT_EQ(rec.decisions.size(), 1u);
    EXPECT_EQ(rec.decisions[0].candidate_estimate, 3u);
    EXPECT_EQ(rec.decisions[0].victim_estimate, 3u);
    EXPECT_TRUE(rec.decisions[0].admitted);
    EXPECT_TRUE(p.main_cache().contains(20));
    EXPECT_EQ(p.level_of(10), 0u);
}

TEST(BiDiFilter, TieRejectDiscardsCandidate) {
    BiDiFilter p(bidi_spec({2, 1}, 0.5, TieBreak::Reject));
    build_tie(p);
    const auto& out = p.access(30);
    EXPECT_EQ(out.writes, (Writes{{1, 1}}));
    EXPECT_TRUE(p.main_cache().contains(10));
    EXPECT_EQ(p.level_of(20), 0u);
    EXPECT_TRUE(p.window().contains(30));
}

// L1 = 2 (window 1, veterans 1), L2 = 2.
// a; b (a -> L2); a (L2 hit, veterans empty -> promoted); b b b (window);
// c (b -> L2). Now veterans = {a: 2}, L2 = {b: 4}.
void build_promotion(BiDiFilter& p) {
    for (ItemKey k : {1, 2, 1, 2, 2, 2, 3}) {
        p.access(k);
    }
    ASSERT_TRUE(p.veterans().contains(1));
    ASSERT_TRUE(p.main_cache().contains(2));
}

TEST(BiDiFilter, FrequentL2HitSwapsWithVeteransVictim) {
    BiDiFilter p(bidi_spec({2, 2}));
    build_promotion(p);
    Recorder rec;
    p.set_decision_observer(rec.observer());
    const auto& out = p.access(2);
    EXPECT_EQ(out.classification, HitClass::HitLevel);
    EXPECT_EQ(out.level, 2u);
    EXPECT_EQ(out.writes, (Writes{{1, 1}, {2, 1}}));
    ASSERT_EQ(rec.decisions.size(), 1u);
    EXPECT_EQ(rec.decisions[0].direction, FilterDecision::Direction::Promotion);
    EXPECT_EQ(rec.decisions[0].candidate_estimate, 5u);
    EXPECT_EQ(rec.decisions[0].victim_estimate, 2u);
    EXPECT_TRUE(p.veterans().contains(2));
    EXPECT_TRUE(p.main_cache().contains(1));
}

TEST(BiDiFilter, InfrequentL2HitStaysInL2) {
    BiDiFilter p(bidi_spec({2, 2}));
    // veterans = {1: 4} after the promotion and two hits; 2 -> L2 with count 1.
    for (ItemKey k : {1, 2, 1, 1, 1, 3}) {
        p.access(k);
    }
    ASSERT_TRUE(p.veterans().contains(1));
    ASSERT_TRUE(p.main_cache().contains(2));
    Recorder rec;
    p.set_decision_observer(rec.observer());
    const auto& out = p.access(2);
    EXPECT_EQ(out.classification, HitClass::HitLevel);
    EXPECT_TRUE(out.writes.empty());
    ASSERT_EQ(rec.decisions.size(), 1u);
    EXPECT_EQ(rec.decisions[0].candidate_estimate, 2u);
    EXPECT_EQ(rec.decisions[0].victim_estimate, 4u);
    EXPECT_TRUE(p.main_cache().contains(2));
    EXPECT_TRUE(p.main_cache().in_protected(2));
}

TEST(BiDiFilter, NoWindowMissLosingBothFiltersIsNotCached) {
    BiDiFilter p(bidi_spec({1, 1}, 0.0, TieBreak::Reject));
    ASSERT_EQ(p.window().capacity(), 0u);
    EXPECT_EQ(p.access(1).writes, (Writes{{1, 1}}));
    p.access(1);  // veterans = {1: 2}
    // 2 loses against the veterans victim, then enters the empty L2.
    EXPECT_EQ(p.access(2).writes, (Writes{{2, 1}}));
    EXPECT_TRUE(p.main_cache().contains(2));
    // 3 (1) loses to veterans victim 1 (2) and ties L2 victim 2 (1).
    EXPECT_TRUE(p.access(3).writes.empty());
    EXPECT_EQ(p.level_of(3), 0u);
}

TEST(BiDiFilter, NoWindowDisplacedVeteranGoesThroughL2Filter) {
    BiDiFilter p(bidi_spec({1, 1}, 0.0, TieBreak::Admit));
    p.access(1);
    // 2 ties veterans victim 1 and wins; 1 drops into the empty L2.
    EXPECT_EQ(p.access(2).writes, (Writes{{1, 1}, {2, 1}}));
    EXPECT_TRUE(p.veterans().contains(2));
    EXPECT_TRUE(p.main_cache().contains(1));
    Recorder rec;
    p.set_decision_observer(rec.observer());
    // 3 displaces 2, and 2 then displaces L2 victim 1.
    EXPECT_EQ(p.access(3).writes, (Writes{{1, 1}, {2, 1}}));
    ASSERT_EQ(rec.decisions.size(), 2u);
    EXPECT_EQ(rec.decisions[0].target_level, 1u);
    EXPECT_EQ(rec.decisions[1].target_level, 2u);
    EXPECT_EQ(rec.decisions[1].candidate, 2u);
    EXPECT_EQ(rec.decisions[1].victim, 1u);
    EXPECT_TRUE(p.veterans().contains(3));
    EXPECT_TRUE(p.main_cache().contains(2));
    EXPECT_EQ(p.level_of(1), 0u);
}

TEST(BiDiFilter, FullWindowPromotesIntoWindow) {
    BiDiFilter p(bidi_spec({1, 2}, 1.0));
    ASSERT_EQ(p.veterans().capacity(), 0u);
    // 1 1 1; 2 (1 -> L2); 1 is an L2 hit with estimate 4 vs window victim 2 (1).
    for (ItemKey k : {1, 1, 1, 2}) {
        p.access(k);
    }
    const auto& out = p.access(1);
    EXPECT_EQ(out.classification, HitClass::HitLevel);
    EXPECT_EQ(out.writes, (Writes{{1, 1}, {2, 1}}));
    EXPECT_TRUE(p.window().contains(1));
    EXPECT_TRUE(p.main_cache().contains(2));
}

TEST(BiDiFilter, UnitedL1UsesWholeL1AsOneLru) {
    PolicySpec s = bidi_spec({4, 8});
    s.kind = PolicyKind::BiDiFilterUnited;
    BiDiFilter p(s);
    EXPECT_EQ(p.window().capacity(), 4u);
    EXPECT_EQ(p.veterans().capacity(), 0u);
    EXPECT_EQ(p.name(), "bidifilter-united");
}

// ---------------------------------------------------------------------------
// N levels: L1 = 2 (window 1, veterans 1), L2 = 2, L3 = 2, reject ties.

TEST(BiDiFilterNLevel, CascadeHandTrace) {
    auto spec = bidi_spec({2, 2, 2}, 0.5, TieBreak::Reject);
    BiDiFilterNLevel p(spec);
    ASSERT_EQ(p.level_count(), 3u);
    const ItemKey a = 1, b = 2, c = 3, d = 4, e = 5, f = 6;

    EXPECT_EQ(p.access(a).writes, (Writes{{1, 1}}));
    EXPECT_EQ(p.access(b).writes, (Writes{{1, 1}, {2, 1}}));  // a -> L2
    EXPECT_EQ(p.access(c).writes, (Writes{{1, 1}, {2, 1}}));  // b -> L2, L2 full
    p.access(c);                                               // c: 2
    // c (2) beats L2 victim a (1); a drops into the empty L3.
    EXPECT_EQ(p.access(d).writes, (Writes{{1, 1}, {2, 1}, {3, 1}}));
    EXPECT_TRUE(p.level(3).contains(a));
    p.access(d);  // d: 2
    // d (2) beats L2 victim b (1); b fills L3.
    EXPECT_EQ(p.access(e).writes, (Writes{{1, 1}, {2, 1}, {3, 1}}));
    ASSERT_TRUE(p.level(3).full());
    for (int i = 0; i < 3; ++i) {
        p.access(e);  // e: 4
    }
    // e (4) beats L2 victim c (2); c (2) beats L3 victim a (1); a leaves.
    Recorder rec;
    p.set_decision_observer(rec.observer());
    const auto out = p.access(f);
    EXPECT_EQ(out.classification, HitClass::Miss);
    EXPECT_EQ(out.writes, (Writes{{1, 1}, {2, 1}, {3, 1}}));
    ASSERT_EQ(rec.decisions.size(), 2u);
    EXPECT_EQ(rec.decisions[0].target_level, 2u);
    EXPECT_EQ(rec.decisions[1].target_level, 3u);
    EXPECT_EQ(p.level_of(a), 0u);
    EXPECT_EQ(p.level_of(c), 3u);
    EXPECT_EQ(p.level_of(e), 2u);

    // c hits in L3 with estimate 3 > L2 victim d (2): c -> L2, d -> L3.
    const auto hit = p.access(c);
    EXPECT_EQ(hit.classification, HitClass::HitLevel);
    EXPECT_EQ(hit.level, 3u);
    EXPECT_EQ(hit.writes, (Writes{{2, 1}, {3, 1}}));
    EXPECT_EQ(p.level_of(c), 2u);
    EXPECT_EQ(p.level_of(d), 3u);
    EXPECT_NO_THROW(p.check_invariants());
}

TEST(BiDiFilterNLevel, RejectedCandidateIsNotOfferedDeeper) {
    BiDiFilterNLevel p(bidi_spec({2, 1, 4}, 0.5, TieBreak::Reject));
    p.access(1);
    p.access(1);
    p.access(2);  // 1 -> L2 (count 2)
    const auto& out = p.access(3);  // candidate 2 (1) loses to 1 (2)
    EXPECT_EQ(out.writes, (Writes{{1, 1}}));
    EXPECT_EQ(p.level_of(2), 0u);
    EXPECT_TRUE(p.level(3).empty());
}

TEST(BiDiFilterNLevel, TwoLevelsMatchTwoLevelEngine) {
    std::mt19937_64 rng(99);
    for (double window : {0.0, 0.25, 0.5, 1.0}) {
        for (auto tie : {TieBreak::Admit, TieBreak::Reject}) {
            PolicySpec spec;
            spec.kind = PolicyKind::BiDiFilter;
            spec.level_capacities = {8, 40};
            spec.window_fraction = window;
            spec.tie_break = tie;
            spec.rng_seed = rng();
            BiDiFilter two(spec);
            BiDiFilterNLevel n(spec);
            for (int i = 0; i < 20'000; ++i) {
                const ItemKey k = (rng() % 4 == 0) ? rng() % 10 : rng() % 300;
                ASSERT_EQ(two.access(k), n.access(k)) << "event " << i;
            }
        }
    }
}

TEST(PolicySpec, RejectsBadParameters) {
    auto s = bidi_spec({2});
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = bidi_spec({0, 4});
    EXPECT_THROW(make_policy(s), std::invalid_argument);
    s = bidi_spec({2, 4}, 1.5);
    EXPECT_THROW(make_policy(s), std::invalid_argument);
    s = bidi_spec({2, 4});
    s.kind = PolicyKind::Demote;
    s.level_capacities = {2, 4, 8};
    EXPECT_THROW(make_policy(s), std::invalid_argument);
    EXPECT_THROW(parse_policy_kind("lfu"), std::invalid_argument);
    EXPECT_THROW(parse_tie_break("maybe"), std::invalid_argument);
}

TEST(PolicySpec, WindowCapacityRounds) {
    auto s = bidi_spec({10, 100}, 0.25);
    EXPECT_EQ(s.window_capacity(), 3u);  // round(2.5) away from zero
    EXPECT_EQ(s.veterans_capacity(), 7u);
    s.window_fraction = 0.01;
    EXPECT_EQ(s.window_capacity(), 0u);
}

}  // namespace
}  // namespace bidicache
