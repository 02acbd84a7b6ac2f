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
#include <list>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bidicache/types.hpp"

namespace bidicache {

enum class EvictionKind { Lru, Slru };

/// Raised when a policy violates a CacheSpace precondition (duplicate insert,
/// insert into a full space, touching an absent key). Always a logic bug.
class PolicyLogicError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// One managed region of the hierarchy (Window, Veterans, or a level's main
/// cache). Capacities count items.
///
/// The space never evicts on its own: callers inspect peek_victim() and
/// remove() explicitly so that admission filters can run in between.
///
/// SLRU keeps a probation and a protected segment. New keys enter probation;
/// a probation hit moves the key to protected, and when protected exceeds its
/// quota its LRU member falls back to probation MRU. Victims come from the
/// probation LRU end, or from protected when probation is empty.
class CacheSpace {
public:
    static constexpr double kDefaultProtectedFraction = 0.8;

    CacheSpace(std::string name, std::size_t capacity, EvictionKind kind = EvictionKind::Lru,
               double protected_fraction = kDefaultProtectedFraction);

    void insert(ItemKey key);
    void touch(ItemKey key);
    void remove(ItemKey key);
    std::optional<ItemKey> peek_victim() const;

    /// peek_victim() followed by remove(); nullopt on an empty space.
    std::optional<ItemKey> pop_victim();

    bool contains(ItemKey key) const { return index_.contains(key); }
    std::size_t size() const noexcept { return index_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    bool full() const noexcept { return index_.size() >= capacity_; }
    bool empty() const noexcept { return index_.empty(); }
    EvictionKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

    std::size_t protected_quota() const noexcept { return protected_quota_; }
    std::size_t protected_size() const noexcept { return protected_.size(); }
    std::size_t probation_size() const noexcept { return probation_.size(); }
    bool in_protected(ItemKey key) const;

    /// Number of insert() calls over the lifetime of the space.
    std::uint64_t insert_count() const noexcept { return inserts_; }

    /// Keys from eviction end to MRU end. For SLRU: probation then protected.
    std::vector<ItemKey> keys_lru_to_mru() const;

    /// Throws PolicyLogicError if any structural invariant is broken.
    void check_invariants() const;

    /// First key held by both spaces, if any.
    std::optional<ItemKey> first_shared_key(const CacheSpace& other) const;

private:
    enum class Segment : std::uint8_t { Probation, Protected };
    struct Slot {
        Segment segment;
        std::list<ItemKey>::iterator pos;
    };

    [[noreturn]] void fail(const std::string& what, ItemKey key) const;

    std::string name_;
    std::size_t capacity_;
    EvictionKind kind_;
    std::size_t protected_quota_ = 0;
    // Front is the LRU end. LRU spaces use only probation_.
    std::list<ItemKey> probation_;
    std::list<ItemKey> protected_;
    std::unordered_map<ItemKey, Slot> index_;
    std::uint64_t inserts_ = 0;
};

}  // namespace bidicache
