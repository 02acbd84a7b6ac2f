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
#include <stdexcept>

#include "bidicache/metrics.hpp"

namespace bidicache {
namespace {

using namespace std::chrono_literals;

SimStats counts(std::uint64_t h1, std::uint64_t h2, std::uint64_t m, std::uint64_t w1 = 0, std::uint64_t w2 = 0) {
    return SimStats::from_counts(h1, 0, {h2}, m, {w1, w2});
}

TEST(Latency, ReadLatencyWorkedExample) {
    const auto s = counts(50, 30, 20);
    ASSERT_EQ(s.requests(), 100u);
    EXPECT_DOUBLE_EQ(avg_read_latency(s, LatencyParams::defaults()).count(), 460'050.0);
    EXPECT_EQ(avg_read_latency(s, LatencyParams::defaults()), AvgNanos{460.05us});
}

TEST(Latency, ReadWriteLatencyWorkedExample) {
    const auto s = counts(50, 30, 20, 100, 10);
    EXPECT_DOUBLE_EQ(avg_rw_latency(s, LatencyParams::defaults()).count(), 480'150.0);
}

TEST(Latency, SingleTermCollapses) {
    const auto p = LatencyParams::defaults();
    EXPECT_EQ(avg_read_latency(counts(100, 0, 0), p), AvgNanos{100ns});
    EXPECT_EQ(avg_read_latency(counts(0, 0, 7), p), AvgNanos{2ms});
    EXPECT_EQ(avg_rw_latency(counts(100, 0, 0), p), avg_read_latency(counts(100, 0, 0), p));
    EXPECT_EQ(avg_rw_latency(counts(100, 0, 0, 0, 100), p), AvgNanos{100ns + 200us});
}

TEST(Latency, VeteransHitsCountAsL1) {
    const auto split = SimStats::from_counts(20, 30, {30}, 20, {});
    EXPECT_EQ(avg_read_latency(split, LatencyParams::defaults()), AvgNanos{460.05us});
}

TEST(Latency, DeeperLevelsReuseLastLatency) {
    LatencyParams p{{10ns, 1000ns}, 5000ns};
    EXPECT_EQ(p.at(3), 1000ns);
    const auto s = SimStats::from_counts(1, 0, {1, 1}, 1, {});
    EXPECT_EQ(avg_read_latency(s, p), AvgNanos{(10.0 + 1000 + 1000 + 5000) / 4});
}

TEST(Latency, AlternateConstants) {
    const auto p = LatencyParams::alternate();
    EXPECT_EQ(p.at(1), 2ns);
    EXPECT_EQ(p.at(2), 200us);
    EXPECT_EQ(p.miss, 100ns);
}

TEST(Latency, EmptyStatsAreRejected) {
    const SimStats empty;
    EXPECT_THROW(avg_read_latency(empty, LatencyParams::defaults()), std::domain_error);
    EXPECT_THROW(avg_rw_latency(empty, LatencyParams::defaults()), std::domain_error);
    EXPECT_THROW(hit_ratio(empty), std::domain_error);
}

TEST(HitRatio, Examples) {
    EXPECT_EQ(hit_ratio(counts(10, 0, 0)), 1.0);
    EXPECT_EQ(hit_ratio(counts(0, 0, 10)), 0.0);
    EXPECT_EQ(hit_ratio(counts(40, 25, 35)), 0.65);
}

TEST(LatencyProperty, ReadNeverExceedsReadWriteAndScaleInvariant) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 1000; ++i) {
        const auto h1 = rng() % 100'000;
        const auto h2 = rng() % 100'000;
        const auto m = 1 + rng() % 100'000;
        const auto w1 = rng() % 200'000;
        const auto w2 = rng() % 200'000;
        const auto p = i % 2 ? LatencyParams::defaults() : LatencyParams::alternate();
        const auto s = counts(h1, h2, m, w1, w2);
        const auto twice = counts(2 * h1, 2 * h2, 2 * m, 2 * w1, 2 * w2);
        ASSERT_LE(avg_read_latency(s, p), avg_rw_latency(s, p));
        ASSERT_EQ(avg_read_latency(s, p), avg_read_latency(twice, p));
        ASSERT_EQ(avg_rw_latency(s, p), avg_rw_latency(twice, p));
    }
}

TEST(SimStats, RecordsOutcomes) {
    SimStats s(2);
    AccessOutcome miss;
    miss.add_write(1);
    s.record(miss);
    AccessOutcome vet;
    vet.classification = HitClass::HitL1Veterans;
    vet.level = 1;
    s.record(vet);
    AccessOutcome l2;
    l2.classification = HitClass::HitLevel;
    l2.level = 2;
    l2.add_write(1);
    l2.add_write(2);
    s.record(l2);
    EXPECT_EQ(s.requests(), 3u);
    EXPECT_EQ(s.misses(), 1u);
    EXPECT_EQ(s.hits_l1_veterans(), 1u);
    EXPECT_EQ(s.hits_at(2), 1u);
    EXPECT_EQ(s.writes_at(1), 2u);
    EXPECT_EQ(s.writes_at(2), 1u);
    EXPECT_TRUE(s.closure_holds());
}

}  // namespace
}  // namespace bidicache
