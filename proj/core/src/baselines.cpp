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

#include "bidicache/baselines.hpp"

#include <stdexcept>

namespace bidicache {

namespace {

const PolicySpec& checked_two_level(const PolicySpec& spec) {
    spec.validate();
    if (spec.levels() != 2) {
        throw std::invalid_argument(std::string(to_string(spec.kind)) + ": exactly 2 levels are supported");
    }
    return spec;
}

}  // namespace

// ---------------------------------------------------------------------------

DemotePolicy::DemotePolicy(const PolicySpec& spec)
    : l1_("L1", checked_two_level(spec).level_capacities[0]), l2_("L2", spec.level_capacities[1]) {}

std::vector<std::pair<std::size_t, const CacheSpace*>> DemotePolicy::spaces() const {
    return {{1, &l1_}, {2, &l2_}};
}

void DemotePolicy::make_room_in_l1() {
    if (!l1_.full()) {
        return;
    }
    const ItemKey demoted = *l1_.pop_victim();
    if (l2_.full()) {
        l2_.pop_victim();
    }
    l2_.insert(demoted);
    out_.add_write(2);
}

const AccessOutcome& DemotePolicy::access(ItemKey key) {
    out_.reset();
    if (l1_.contains(key)) {
        l1_.touch(key);
        out_.classification = HitClass::HitL1Window;
        out_.level = 1;
        return out_;
    }
    if (l2_.contains(key)) {
        out_.classification = HitClass::HitLevel;
        out_.level = 2;
        l2_.remove(key);
    } else {
        out_.classification = HitClass::Miss;
        out_.level = 0;
    }
    make_room_in_l1();
    l1_.insert(key);
    out_.add_write(1);
    return out_;
}

// ---------------------------------------------------------------------------

NaiveLruPolicy::NaiveLruPolicy(const PolicySpec& spec)
    : l1_("L1", checked_two_level(spec).level_capacities[0]), l2_("L2", spec.level_capacities[1]) {}

std::vector<std::pair<std::size_t, const CacheSpace*>> NaiveLruPolicy::spaces() const {
    return {{1, &l1_}, {2, &l2_}};
}

const AccessOutcome& NaiveLruPolicy::access(ItemKey key) {
    out_.reset();
    if (l1_.contains(key)) {
        l1_.touch(key);
        out_.classification = HitClass::HitL1Window;
        out_.level = 1;
        return out_;
    }
    if (l2_.contains(key)) {
        l2_.touch(key);
        out_.classification = HitClass::HitLevel;
        out_.level = 2;
        return out_;
    }
    out_.classification = HitClass::Miss;
    out_.level = 0;
    if (l1_.full()) {
        const ItemKey demoted = *l1_.pop_victim();
        if (l2_.full()) {
            l2_.pop_victim();
        }
        l2_.insert(demoted);
        out_.add_write(2);
    }
    l1_.insert(key);
    out_.add_write(1);
    return out_;
}

// ---------------------------------------------------------------------------

PromotePolicy::PromotePolicy(const PolicySpec& spec)
    : p_(checked_two_level(spec).promote_p),
      q_(spec.promote_q),
      rng_(spec.rng_seed),
      l1_("L1", spec.level_capacities[0]),
      l2_("L2", spec.level_capacities[1]) {}

std::vector<std::pair<std::size_t, const CacheSpace*>> PromotePolicy::spaces() const {
    return {{1, &l1_}, {2, &l2_}};
}

bool PromotePolicy::coin(double probability) {
    // 53 random mantissa bits; u in [0, 1), so p = 1 always and p = 0 never fires.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return u < probability;
}

void PromotePolicy::make_room_in_l1() {
    if (!l1_.full()) {
        return;
    }
    const ItemKey demoted = *l1_.pop_victim();
    if (!coin(q_)) {
        return;
    }
    if (l2_.full()) {
        l2_.pop_victim();
    }
    l2_.insert(demoted);
    out_.add_write(2);
}

const AccessOutcome& PromotePolicy::access(ItemKey key) {
    out_.reset();
    if (l1_.contains(key)) {
        l1_.touch(key);
        out_.classification = HitClass::HitL1Window;
        out_.level = 1;
        return out_;
    }
    if (l2_.contains(key)) {
        out_.classification = HitClass::HitLevel;
        out_.level = 2;
        if (!coin(p_)) {
            l2_.touch(key);
            return out_;
        }
        l2_.remove(key);
    } else {
        out_.classification = HitClass::Miss;
        out_.level = 0;
    }
    make_room_in_l1();
    l1_.insert(key);
    out_.add_write(1);
    return out_;
}

}  // namespace bidicache
