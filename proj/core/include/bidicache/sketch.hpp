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
#include <vector>

#include "bidicache/types.hpp"

namespace bidicache {

/// Shape and aging parameters of a FrequencySketch.
///
/// `sample_size` is the number of recorded requests between two halvings and
/// `tracked_capacity` is the total number of items the cache holds. Counters
/// saturate at ceil(sample_size / tracked_capacity), which must fit in
/// `counter_bits`.
struct SketchConfig {
    std::uint64_t sample_size = 10;
    std::uint64_t tracked_capacity = 1;
    std::size_t depth = 4;
    std::size_t width = 1;
    unsigned counter_bits = 4;
    std::uint64_t seed = 0;

    /// W = 10 * C, depth 4, width = next power of two >= C, 4-bit counters.
    static SketchConfig for_capacity(std::uint64_t total_capacity, std::uint64_t seed = 0);

    std::uint32_t counter_cap() const noexcept;

    /// Throws std::invalid_argument when the configuration is unusable.
    void validate() const;
};

/// Count-Min sketch with saturating counters and periodic halving.
///
/// Not thread-safe. Every request should be recorded once, before the policy
/// consults the estimates.
class FrequencySketch {
public:
    explicit FrequencySketch(const SketchConfig& config);

    void record(ItemKey key);
    std::uint32_t estimate(ItemKey key) const;

    /// Floors every counter to half its value. Called automatically every
    /// `sample_size` records.
    void halve();

    const SketchConfig& config() const noexcept { return config_; }
    std::uint32_t cap() const noexcept { return cap_; }
    std::uint64_t increments_since_reset() const noexcept { return increments_; }
    std::uint64_t halvings() const noexcept { return halvings_; }

    /// Column addressed by `key` in `row`; exposed for collision tests.
    std::size_t column(std::size_t row, ItemKey key) const noexcept;
    std::uint32_t counter(std::size_t row, std::size_t col) const { return counters_.at(row * config_.width + col); }
    std::uint32_t max_counter() const noexcept;

private:
    SketchConfig config_;
    std::uint32_t cap_;
    std::vector<std::uint64_t> row_seeds_;
    std::vector<std::uint8_t> counters_;
    std::uint64_t increments_ = 0;
    std::uint64_t halvings_ = 0;
};

}  // namespace bidicache
