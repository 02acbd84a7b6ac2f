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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "bidicache/policy.hpp"

namespace bidicache {

using Nanos = std::chrono::nanoseconds;
using AvgNanos = std::chrono::duration<double, std::nano>;

/// Raw per-level counters of one simulation. Ratios are derived on demand.
class SimStats {
public:
    explicit SimStats(std::size_t levels = 2);

    void record(const AccessOutcome& outcome);

    std::size_t levels() const noexcept { return writes_.size() - 1; }
    std::uint64_t requests() const noexcept { return requests_; }
    std::uint64_t misses() const noexcept { return misses_; }
    std::uint64_t hits_l1_window() const noexcept { return h_l1_window_; }
    std::uint64_t hits_l1_veterans() const noexcept { return h_l1_veterans_; }
    /// Hits at `level` (1-based); level 1 sums window and veterans.
    std::uint64_t hits_at(std::size_t level) const;
    std::uint64_t total_hits() const noexcept;
    std::uint64_t writes_at(std::size_t level) const;

    /// requests == all hits + misses.
    bool closure_holds() const noexcept { return total_hits() + misses_ == requests_; }

    /// Builds stats from raw counters; `hits_below_l1[i]` is level i + 2,
    /// `writes[i]` is level i + 1.
    static SimStats from_counts(std::uint64_t h_l1_window, std::uint64_t h_l1_veterans,
                                const std::vector<std::uint64_t>& hits_below_l1, std::uint64_t misses,
                                const std::vector<std::uint64_t>& writes);

private:
    std::uint64_t requests_ = 0;
    std::uint64_t h_l1_window_ = 0;
    std::uint64_t h_l1_veterans_ = 0;
    std::uint64_t misses_ = 0;
    // Indexed by level; slot 0 unused, slot 1 of hits_ unused (see window/veterans).
    std::vector<std::uint64_t> hits_;
    std::vector<std::uint64_t> writes_;
};

/// Per-level access latencies plus the cost of a complete miss. Levels past
/// the end of `level` reuse the last entry.
struct LatencyParams {
    std::vector<Nanos> level{Nanos{100}, Nanos{200'000}};
    Nanos miss{2'000'000};

    /// 100ns / 200us / 2ms.
    static LatencyParams defaults() { return {}; }
    /// The alternative 2ns / 200us / 100ns constant set.
    static LatencyParams alternate() { return {{Nanos{2}, Nanos{200'000}}, Nanos{100}}; }

    Nanos at(std::size_t level_index) const;
    void validate() const;
};

/// (sum_i t_i * H_i + t_miss * M) / N. Throws std::domain_error when N == 0.
AvgNanos avg_read_latency(const SimStats& stats, const LatencyParams& params);

/// avg_read_latency plus the cost of every write, (... + sum_i t_i * W_i) / N.
AvgNanos avg_rw_latency(const SimStats& stats, const LatencyParams& params);

double hit_ratio(const SimStats& stats);

}  // namespace bidicache
