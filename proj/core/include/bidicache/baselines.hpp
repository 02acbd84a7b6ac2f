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

#include <random>
#include <string>

#include "bidicache/cache_space.hpp"
#include "bidicache/policy.hpp"

namespace bidicache {

/// Global LRU over two exclusive levels. The first |L1| positions of one
/// recency order are L1, the next |L2| are L2, so every miss and every L2 hit
/// pushes L1's LRU item down into L2.
class DemotePolicy final : public Policy {
public:
    explicit DemotePolicy(const PolicySpec& spec);

    const AccessOutcome& access(ItemKey key) override;
    std::string_view name() const override { return "demote"; }
    std::size_t level_count() const override { return 2; }
    std::vector<std::pair<std::size_t, const CacheSpace*>> spaces() const override;

private:
    void make_room_in_l1();

    CacheSpace l1_;
    CacheSpace l2_;
    AccessOutcome out_;
};

/// Two independent LRU levels. Hits reorder only within their own level; L1
/// victims fall into L2 and L2 hits never move up.
class NaiveLruPolicy final : public Policy {
public:
    explicit NaiveLruPolicy(const PolicySpec& spec);

    const AccessOutcome& access(ItemKey key) override;
    std::string_view name() const override { return "naive-lru"; }
    std::size_t level_count() const override { return 2; }
    std::vector<std::pair<std::size_t, const CacheSpace*>> spaces() const override;

private:
    CacheSpace l1_;
    CacheSpace l2_;
    AccessOutcome out_;
};

/// Fixed-probability promotion baseline: an L2 hit moves to L1 with
/// probability p, and an L1 victim is kept in L2 with probability q.
/// p = q = 1 reduces to Demote; p = 0, q = 1 reduces to NaiveLRU.
class PromotePolicy final : public Policy {
public:
    explicit PromotePolicy(const PolicySpec& spec);

    const AccessOutcome& access(ItemKey key) override;
    std::string_view name() const override { return "promote"; }
    std::size_t level_count() const override { return 2; }
    std::vector<std::pair<std::size_t, const CacheSpace*>> spaces() const override;

private:
    bool coin(double probability);
    void make_room_in_l1();

    double p_;
    double q_;
    std::mt19937_64 rng_;
    CacheSpace l1_;
    CacheSpace l2_;
    AccessOutcome out_;
};

}  // namespace bidicache
