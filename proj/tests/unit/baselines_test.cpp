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

#include <memory>
#include <random>
#include <vector>

#include "bidicache/baselines.hpp"
#include "bidicache/policy.hpp"

namespace bidicache {
namespace {

using Writes = std::vector<LevelWrites>;

PolicySpec two_level(PolicyKind kind, std::size_t l1, std::size_t l2) {
    PolicySpec s;
    s.kind = kind;
    s.level_capacities = {l1, l2};
    return s;
}

TEST(Demote, GlobalLruHandTrace) {
    DemotePolicy p(two_level(PolicyKind::Demote, 1, 1));
    const auto& a = p.access(1);
    EXPECT_EQ(a.classification, HitClass::Miss);
    EXPECT_EQ(a.writes, (Writes{{1, 1}}));
    const auto& b = p.access(2);
    EXPECT_EQ(b.classification, HitClass::Miss);
    EXPECT_EQ(b.writes, (Writes{{1, 1}, {2, 1}}));
    const auto& again = p.access(1);
    EXPECT_EQ(again.classification, HitClass::HitLevel);
    EXPECT_EQ(again.level, 2u);
    EXPECT_EQ(again.writes, (Writes{{1, 1}, {2, 1}}));
    EXPECT_EQ(p.level_of(1), 1u);
    EXPECT_EQ(p.level_of(2), 2u);
}

TEST(Demote, L1HitOnlyTouches) {
    DemotePolicy p(two_level(PolicyKind::Demote, 2, 2));
    p.access(1);
    const auto& out = p.access(1);
    EXPECT_EQ(out.classification, HitClass::HitL1Window);
    EXPECT_TRUE(out.writes.empty());
}

TEST(NaiveLru, L2HitStaysInL2WithoutWrites) {
    NaiveLruPolicy p(two_level(PolicyKind::NaiveLru, 1, 2));
    p.access(1);
    EXPECT_EQ(p.access(2).writes, (Writes{{1, 1}, {2, 1}}));
    for (int i = 0; i < 5; ++i) {
        const auto& out = p.access(1);
        EXPECT_EQ(out.classification, HitClass::HitLevel);
        EXPECT_TRUE(out.writes.empty());
        EXPECT_EQ(p.level_of(1), 2u);
    }
}

TEST(Promote, CoinsDrawFromSeededRng) {
    auto spec = two_level(PolicyKind::Promote, 4, 16);
    spec.promote_p = 0.5;
    spec.promote_q = 0.5;
    spec.rng_seed = 42;
    std::mt19937_64 rng(7);
    std::vector<ItemKey> trace(100);
    for (auto& k : trace) {
        k = rng() % 30;
    }
    auto run = [&] {
        PromotePolicy p(spec);
        std::vector<AccessOutcome> outs;
        for (ItemKey k : trace) {
            outs.push_back(p.access(k));
        }
        return outs;
    };
    EXPECT_EQ(run(), run());
}

// p = 1, q = 1 is Demote; p = 0, q = 1 is NaiveLRU.
TEST(Promote, DegenerateProbabilitiesMatchBaselines) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<ItemKey> trace(2000);
        for (auto& k : trace) {
            k = rng() % 60;
        }
        const std::size_t l1 = 1 + rng() % 8;
        const std::size_t l2 = 1 + rng() % 30;
        for (double p : {1.0, 0.0}) {
            auto spec = two_level(PolicyKind::Promote, l1, l2);
            spec.promote_p = p;
            spec.promote_q = 1.0;
            spec.rng_seed = rng();
            PromotePolicy promote(spec);
            std::unique_ptr<Policy> base;
            if (p == 1.0) {
                base = std::make_unique<DemotePolicy>(two_level(PolicyKind::Demote, l1, l2));
            } else {
                base = std::make_unique<NaiveLruPolicy>(two_level(PolicyKind::NaiveLru, l1, l2));
            }
            for (ItemKey k : trace) {
                ASSERT_EQ(promote.access(k), base->access(k));
            }
        }
    }
}

TEST(Baselines, RejectMoreThanTwoLevels) {
    EXPECT_THROW(DemotePolicy(PolicySpec{PolicyKind::Demote, {1, 2, 3}}), std::invalid_argument);
    EXPECT_THROW(make_policy(two_level(PolicyKind::NaiveLru, 0, 2)), std::invalid_argument);
}

}  // namespace
}  // namespace bidicache
