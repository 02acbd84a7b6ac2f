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

#include "bidicache/sketch.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace bidicache {

SketchConfig SketchConfig::for_capacity(std::uint64_t total_capacity, std::uint64_t seed) {
    SketchConfig c;
    c.tracked_capacity = std::max<std::uint64_t>(total_capacity, 1);
    c.sample_size = 10 * c.tracked_capacity;
    c.depth = 4;
    c.width = std::bit_ceil(static_cast<std::size_t>(c.tracked_capacity));
    c.counter_bits = 4;
    c.seed = seed;
    return c;
}

std::uint32_t SketchConfig::counter_cap() const noexcept {
    if (tracked_capacity == 0) {
        return 0;
    }
    const std::uint64_t cap = (sample_size + tracked_capacity - 1) / tracked_capacity;
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(cap, std::numeric_limits<std::uint32_t>::max()));
}

void SketchConfig::validate() const {
    if (sample_size == 0) {
        throw std::invalid_argument("sketch: sample size must be positive");
    }
    if (tracked_capacity == 0) {
        throw std::invalid_argument("sketch: tracked capacity must be positive");
    }
    if (depth == 0) {
        throw std::invalid_argument("sketch: depth must be at least 1");
    }
    if (width < tracked_capacity) {
        throw std::invalid_argument("sketch: width " + std::to_string(width) +
                                    " is smaller than tracked capacity " + std::to_string(tracked_capacity));
    }
    // Counters live in bytes.
    if (counter_bits == 0 || counter_bits > 8) {
        throw std::invalid_argument("sketch: counter_bits must be in [1, 8]");
    }
    const std::uint64_t max_value = (std::uint64_t{1} << counter_bits) - 1;
    if (counter_cap() > max_value) {
        throw std::invalid_argument("sketch: counter cap " + std::to_string(counter_cap()) + " does not fit in " +
                                    std::to_string(counter_bits) + "-bit counters");
    }
}

FrequencySketch::FrequencySketch(const SketchConfig& config) : config_(config), cap_(config.counter_cap()) {
    config_.validate();
    row_seeds_.reserve(config_.depth);
    for (std::size_t row = 0; row < config_.depth; ++row) {
        row_seeds_.push_back(derive_seed(config_.seed, row));
    }
    counters_.assign(config_.depth * config_.width, 0);
}

std::size_t FrequencySketch::column(std::size_t row, ItemKey key) const noexcept {
    const std::uint64_t h = mix64(key ^ row_seeds_[row]);
    // Lemire's multiply-shift range reduction; exact for any width.
    return static_cast<std::size_t>((static_cast<uint128>(h) * config_.width) >> 64);
}

void FrequencySketch::record(ItemKey key) {
    for (std::size_t row = 0; row < config_.depth; ++row) {
        auto& c = counters_[row * config_.width + column(row, key)];
        if (c < cap_) {
            ++c;
        }
    }
    if (++increments_ >= config_.sample_size) {
        halve();
        increments_ = 0;
    }
}

std::uint32_t FrequencySketch::estimate(ItemKey key) const {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t row = 0; row < config_.depth; ++row) {
        best = std::min<std::uint32_t>(best, counters_[row * config_.width + column(row, key)]);
    }
    return best;
}

void FrequencySketch::halve() {
    for (auto& c : counters_) {
        c = static_cast<std::uint8_t>(c >> 1);
    }
    ++halvings_;
}

std::uint32_t FrequencySketch::max_counter() const noexcept {
    const auto it = std::max_element(counters_.begin(), counters_.end());
    return it == counters_.end() ? 0 : *it;
}

}  // namespace bidicache
