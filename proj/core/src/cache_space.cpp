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

#include "bidicache/cache_space.hpp"

#include <cmath>
#include <utility>

namespace bidicache {

CacheSpace::CacheSpace(std::string name, std::size_t capacity, EvictionKind kind, double protected_fraction)
    : name_(std::move(name)), capacity_(capacity), kind_(kind) {
    if (kind_ == EvictionKind::Slru) {
        if (!(protected_fraction >= 0.0 && protected_fraction <= 1.0)) {
            throw std::invalid_argument("cache space " + name_ + ": protected fraction outside [0, 1]");
        }
        protected_quota_ = static_cast<std::size_t>(std::ceil(protected_fraction * static_cast<double>(capacity_)));
    }
    index_.reserve(capacity_);
}

void CacheSpace::fail(const std::string& what, ItemKey key) const {
    throw PolicyLogicError("cache space " + name_ + ": " + what + " (key " + std::to_string(key) + ")");
}

void CacheSpace::insert(ItemKey key) {
    if (index_.contains(key)) {
        fail("duplicate insert", key);
    }
    if (index_.size() >= capacity_) {
        fail("insert into full space", key);
    }
    probation_.push_back(key);
    index_.emplace(key, Slot{Segment::Probation, std::prev(probation_.end())});
    ++inserts_;
}

void CacheSpace::touch(ItemKey key) {
    const auto it = index_.find(key);
    if (it == index_.end()) {
        fail("touch of absent key", key);
    }
    Slot& slot = it->second;
    if (kind_ == EvictionKind::Lru) {
        probation_.splice(probation_.end(), probation_, slot.pos);
        return;
    }
    if (slot.segment == Segment::Protected) {
        protected_.splice(protected_.end(), protected_, slot.pos);
        return;
    }
    if (protected_quota_ == 0) {
        probation_.splice(probation_.end(), probation_, slot.pos);
        return;
    }
    protected_.splice(protected_.end(), probation_, slot.pos);
    slot.segment = Segment::Protected;
    if (protected_.size() > protected_quota_) {
        const ItemKey demoted = protected_.front();
        probation_.splice(probation_.end(), protected_, protected_.begin());
        index_.at(demoted).segment = Segment::Probation;
    }
}

void CacheSpace::remove(ItemKey key) {
    const auto it = index_.find(key);
    if (it == index_.end()) {
        fail("remove of absent key", key);
    }
    auto& list = it->second.segment == Segment::Protected ? protected_ : probation_;
    list.erase(it->second.pos);
    index_.erase(it);
}

std::optional<ItemKey> CacheSpace::peek_victim() const {
    if (!probation_.empty()) {
        return probation_.front();
    }
    if (!protected_.empty()) {
        return protected_.front();
    }
    return std::nullopt;
}

std::optional<ItemKey> CacheSpace::pop_victim() {
    auto victim = peek_victim();
    if (victim) {
        remove(*victim);
    }
    return victim;
}

bool CacheSpace::in_protected(ItemKey key) const {
    const auto it = index_.find(key);
    return it != index_.end() && it->second.segment == Segment::Protected;
}

std::vector<ItemKey> CacheSpace::keys_lru_to_mru() const {
    std::vector<ItemKey> out(probation_.begin(), probation_.end());
    out.insert(out.end(), protected_.begin(), protected_.end());
    return out;
}

void CacheSpace::check_invariants() const {
    if (index_.size() > capacity_) {
        throw PolicyLogicError("cache space " + name_ + ": over capacity");
    }
    if (probation_.size() + protected_.size() != index_.size()) {
        throw PolicyLogicError("cache space " + name_ + ": index and lists disagree");
    }
    if (kind_ == EvictionKind::Slru && protected_.size() > protected_quota_) {
        throw PolicyLogicError("cache space " + name_ + ": protected segment over quota");
    }
    // Each listed entry must be the exact node its index slot points to, so
    // a key listed twice cannot pass.
    for (auto segment : {Segment::Probation, Segment::Protected}) {
        const auto& list = segment == Segment::Probation ? probation_ : protected_;
        for (auto it = list.begin(); it != list.end(); ++it) {
            const auto slot = index_.find(*it);
            if (slot == index_.end()) {
                fail("listed key missing from index", *it);
            }
            if (slot->second.segment != segment || &*slot->second.pos != &*it) {
                fail("index points at the wrong list node", *it);
            }
        }
    }
}

std::optional<ItemKey> CacheSpace::first_shared_key(const CacheSpace& other) const {
    const CacheSpace& small = size() <= other.size() ? *this : other;
    const CacheSpace& large = &small == this ? other : *this;
    for (const auto& [k, slot] : small.index_) {
        if (large.contains(k)) {
            return k;
        }
    }
    return std::nullopt;
}

}  // namespace bidicache
