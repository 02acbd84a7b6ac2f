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

#include "bidicache/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bidicache {

SimStats::SimStats(std::size_t levels) : hits_(levels + 1, 0), writes_(levels + 1, 0) {
    if (levels < 1) {
        throw std::invalid_argument("stats: at least one level");
    }
}

void SimStats::record(const AccessOutcome& outcome) {
    ++requests_;
    switch (outcome.classification) {
        case HitClass::HitL1Window: ++h_l1_window_; break;
        case HitClass::HitL1Veterans: ++h_l1_veterans_; break;
        case HitClass::HitLevel: ++hits_.at(outcome.level); break;
        case HitClass::Miss: ++misses_; break;
    }
    for (const auto& w : outcome.writes) {
        writes_.at(w.level) += w.count;
    }
}

std::uint64_t SimStats::hits_at(std::size_t level) const {
    if (level == 1) {
        return h_l1_window_ + h_l1_veterans_;
    }
    return level < hits_.size() ? hits_[level] : 0;
}

std::uint64_t SimStats::total_hits() const noexcept {
    return std::accumulate(hits_.begin() + 2, hits_.end(), h_l1_window_ + h_l1_veterans_);
}

std::uint64_t SimStats::writes_at(std::size_t level) const {
    return level >= 1 && level < writes_.size() ? writes_[level] : 0;
}

SimStats SimStats::from_counts(std::uint64_t h_l1_window, std::uint64_t h_l1_veterans,
                               const std::vector<std::uint64_t>& hits_below_l1, std::uint64_t misses,
                               const std::vector<std::uint64_t>& writes) {
    const std::size_t levels = std::max(hits_below_l1.size() + 1, writes.size());
    SimStats s(levels);
    s.h_l1_window_ = h_l1_window;
    s.h_l1_veterans_ = h_l1_veterans;
    for (std::size_t i = 0; i < hits_below_l1.size(); ++i) {
        s.hits_[i + 2] = hits_below_l1[i];
    }
    for (std::size_t i = 0; i < writes.size(); ++i) {
        s.writes_[i + 1] = writes[i];
    }
    s.misses_ = misses;
    s.requests_ = s.total_hits() + misses;
    return s;
}

// ---------------------------------------------------------------------------

Nanos LatencyParams::at(std::size_t level_index) const {
    if (level.empty() || level_index == 0) {
        throw std::out_of_range("latency: no entry for level " + std::to_string(level_index));
    }
    return level[std::min(level_index, level.size()) - 1];
}

void LatencyParams::validate() const {
    if (level.empty()) {
        throw std::invalid_argument("latency: at least one level latency is required");
    }
    for (const auto& t : level) {
        if (t.count() <= 0) {
            throw std::invalid_argument("latency: level latencies must be positive");
        }
    }
    if (miss.count() <= 0) {
        throw std::invalid_argument("latency: miss latency must be positive");
    }
}

namespace {

void require_requests(const SimStats& stats) {
    if (stats.requests() == 0) {
        throw std::domain_error("latency: no requests recorded");
    }
}

// Exact integer numerator; counters times nanoseconds can exceed 2^64.
uint128 read_cost(const SimStats& stats, const LatencyParams& params) {
    uint128 cost = static_cast<uint128>(params.miss.count()) * stats.misses();
    for (std::size_t level = 1; level <= stats.levels(); ++level) {
        cost += static_cast<uint128>(params.at(level).count()) * stats.hits_at(level);
    }
    return cost;
}

uint128 write_cost(const SimStats& stats, const LatencyParams& params) {
    uint128 cost = 0;
    for (std::size_t level = 1; level <= stats.levels(); ++level) {
        cost += static_cast<uint128>(params.at(level).count()) * stats.writes_at(level);
    }
    return cost;
}

}  // namespace

AvgNanos avg_read_latency(const SimStats& stats, const LatencyParams& params) {
    require_requests(stats);
    return AvgNanos{static_cast<double>(read_cost(stats, params)) / static_cast<double>(stats.requests())};
}

AvgNanos avg_rw_latency(const SimStats& stats, const LatencyParams& params) {
    require_requests(stats);
    const uint128 cost = read_cost(stats, params) + write_cost(stats, params);
    return AvgNanos{static_cast<double>(cost) / static_cast<double>(stats.requests())};
}

double hit_ratio(const SimStats& stats) {
    require_requests(stats);
    return static_cast<double>(stats.total_hits()) / static_cast<double>(stats.requests());
}

}  // namespace bidicache
