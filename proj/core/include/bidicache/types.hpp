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

#include <cstdint>

namespace bidicache {

/// Opaque item identifier. Synthetic traces use Zipf ranks directly; file
/// traces intern their chunk labels into dense ids.
using ItemKey = std::uint64_t;

__extension__ typedef unsigned __int128 uint128;

/// One request against the cache hierarchy. All items are equal-sized.
struct AccessEvent {
    ItemKey key = 0;

    friend bool operator==(const AccessEvent&, const AccessEvent&) = default;
};

/// SplitMix64 finalizer. Used for seed derivation and sketch row hashing.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent child seed, e.g. for one sweep cell or sketch row.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index + 0x632be59bd9b4e019ULL));
}

}  // namespace bidicache
