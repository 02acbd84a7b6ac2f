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

#include "bidicache/bidi_filter.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace bidicache {

namespace {

const PolicySpec& checked(const PolicySpec& spec) {
    spec.validate();
    return spec;
}

bool compare(std::uint32_t candidate, std::uint32_t victim, TieBreak tie) {
    return tie == TieBreak::Admit ? candidate >= victim : candidate > victim;
}

}  // namespace

// ---------------------------------------------------------------------------
// Two-level engine

BiDiFilter::BiDiFilter(const PolicySpec& spec)
    : name_(to_string(checked(spec).kind)),
      tie_(spec.tie_break),
      sketch_(spec.sketch_config()),
      window_("window", spec.window_capacity()),
      veterans_("veterans", spec.veterans_capacity()),
      main_("L2", spec.level_capacities.at(1), EvictionKind::Slru, spec.protected_fraction) {
    if (spec.levels() != 2) {
        throw std::invalid_argument("BiDiFilter: two-level engine needs exactly 2 levels");
    }
}

std::vector<std::pair<std::size_t, const CacheSpace*>> BiDiFilter::spaces() const {
    return {{1, &window_}, {1, &veterans_}, {2, &main_}};
}

bool BiDiFilter::wins(ItemKey candidate, ItemKey victim, std::size_t target_level, FilterDecision::Direction dir) {
    const auto ce = sketch_.estimate(candidate);
    const auto ve = sketch_.estimate(victim);
    const bool admitted = compare(ce, ve, tie_);
    notify({dir, target_level, candidate, victim, ce, ve, tie_, admitted});
    return admitted;
}

const AccessOutcome& BiDiFilter::access(ItemKey key) {
    sketch_.record(key);
    out_.reset();
    if (window_.contains(key)) {
        window_.touch(key);
        out_.classification = HitClass::HitL1Window;
        out_.level = 1;
    } else if (veterans_.contains(key)) {
        veterans_.touch(key);
        out_.classification = HitClass::HitL1Veterans;
        out_.level = 1;
    } else if (main_.contains(key)) {
        out_.classification = HitClass::HitLevel;
        out_.level = 2;
        on_l2_hit(key);
    } else {
        out_.classification = HitClass::Miss;
        out_.level = 0;
        on_miss(key);
    }
    return out_;
}

void BiDiFilter::admit_to_main(ItemKey candidate) {
    if (!main_.full()) {
        main_.insert(candidate);
        out_.add_write(2);
        return;
    }
    const ItemKey victim = *main_.peek_victim();
    if (wins(candidate, victim, 2, FilterDecision::Direction::Admission)) {
        main_.remove(victim);
        main_.insert(candidate);
        out_.add_write(2);
    }
}

void BiDiFilter::on_miss(ItemKey key) {
    if (window_.capacity() == 0) {
        if (!veterans_.full()) {
            veterans_.insert(key);
            out_.add_write(1);
            return;
        }
        const ItemKey victim = *veterans_.peek_victim();
        if (wins(key, victim, 1, FilterDecision::Direction::Admission)) {
            veterans_.remove(victim);
            veterans_.insert(key);
            out_.add_write(1);
            admit_to_main(victim);
        } else {
            admit_to_main(key);
        }
        return;
    }

    std::optional<ItemKey> candidate;
    if (window_.full()) {
        candidate = window_.pop_victim();
    }
    window_.insert(key);
    out_.add_write(1);
    if (candidate) {
        admit_to_main(*candidate);
    }
}

void BiDiFilter::on_l2_hit(ItemKey key) {
    const bool into_veterans = veterans_.capacity() > 0;
    CacheSpace& target = into_veterans ? veterans_ : window_;
    if (!target.full()) {
        main_.remove(key);
        target.insert(key);
        out_.add_write(1);
        return;
    }
    const ItemKey victim = *target.peek_victim();
    if (!wins(key, victim, 1, FilterDecision::Direction::Promotion)) {
        main_.touch(key);
        return;
    }
    main_.remove(key);
    target.remove(victim);
    target.insert(key);
    out_.add_write(1);
    if (into_veterans) {
        main_.insert(victim);
        out_.add_write(2);
    } else {
        admit_to_main(victim);
    }
}

// ---------------------------------------------------------------------------
// N-level engine

BiDiFilterNLevel::BiDiFilterNLevel(const PolicySpec& spec)
    : name_(to_string(checked(spec).kind)),
      tie_(spec.tie_break),
      sketch_(spec.sketch_config()),
      window_("window", spec.window_capacity()),
      veterans_("veterans", spec.veterans_capacity()) {
    lower_.reserve(spec.levels() - 1);
    for (std::size_t i = 1; i < spec.levels(); ++i) {
        lower_.emplace_back("L" + std::to_string(i + 1), spec.level_capacities[i], EvictionKind::Slru,
                            spec.protected_fraction);
    }
}

std::vector<std::pair<std::size_t, const CacheSpace*>> BiDiFilterNLevel::spaces() const {
    std::vector<std::pair<std::size_t, const CacheSpace*>> out{{1, &window_}, {1, &veterans_}};
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        out.emplace_back(i + 2, &lower_[i]);
    }
    return out;
}

bool BiDiFilterNLevel::wins(ItemKey candidate, ItemKey victim, std::size_t target_level,
                            FilterDecision::Direction dir) {
    const auto ce = sketch_.estimate(candidate);
    const auto ve = sketch_.estimate(victim);
    const bool admitted = compare(ce, ve, tie_);
    notify({dir, target_level, candidate, victim, ce, ve, tie_, admitted});
    return admitted;
}

const AccessOutcome& BiDiFilterNLevel::access(ItemKey key) {
    sketch_.record(key);
    out_.reset();
    if (window_.contains(key)) {
        window_.touch(key);
        out_.classification = HitClass::HitL1Window;
        out_.level = 1;
        return out_;
    }
    if (veterans_.contains(key)) {
        veterans_.touch(key);
        out_.classification = HitClass::HitL1Veterans;
        out_.level = 1;
        return out_;
    }
    for (std::size_t level = 2; level <= level_count(); ++level) {
        if (lower(level).contains(key)) {
            out_.classification = HitClass::HitLevel;
            out_.level = level;
            on_lower_hit(key, level);
            return out_;
        }
    }
    out_.classification = HitClass::Miss;
    out_.level = 0;
    on_miss(key);
    return out_;
}

void BiDiFilterNLevel::cascade(ItemKey candidate, std::size_t level) {
    for (; level <= level_count(); ++level) {
        CacheSpace& space = lower(level);
        if (!space.full()) {
            space.insert(candidate);
            out_.add_write(level);
            return;
        }
        const ItemKey victim = *space.peek_victim();
        if (!wins(candidate, victim, level, FilterDecision::Direction::Admission)) {
            return;
        }
        space.remove(victim);
        space.insert(candidate);
        out_.add_write(level);
        candidate = victim;
    }
    // The last level's victim leaves the hierarchy.
}

void BiDiFilterNLevel::on_miss(ItemKey key) {
    if (window_.capacity() == 0) {
        if (!veterans_.full()) {
            veterans_.insert(key);
            out_.add_write(1);
            return;
        }
        const ItemKey victim = *veterans_.peek_victim();
        if (wins(key, victim, 1, FilterDecision::Direction::Admission)) {
            veterans_.remove(victim);
            veterans_.insert(key);
            out_.add_write(1);
            cascade(victim, 2);
        } else {
            cascade(key, 2);
        }
        return;
    }
    std::optional<ItemKey> candidate;
    if (window_.full()) {
        candidate = window_.pop_victim();
    }
    window_.insert(key);
    out_.add_write(1);
    if (candidate) {
        cascade(*candidate, 2);
    }
}

void BiDiFilterNLevel::on_lower_hit(ItemKey key, std::size_t level) {
    CacheSpace& source = lower(level);
    const bool into_window = level == 2 && veterans_.capacity() == 0;
    CacheSpace& target = level > 2 ? lower(level - 1) : (into_window ? window_ : veterans_);
    if (!target.full()) {
        source.remove(key);
        target.insert(key);
        out_.add_write(level - 1);
        return;
    }
    const ItemKey victim = *target.peek_victim();
    if (!wins(key, victim, level - 1, FilterDecision::Direction::Promotion)) {
        source.touch(key);
        return;
    }
    source.remove(key);
    target.remove(victim);
    target.insert(key);
    out_.add_write(level - 1);
    if (into_window) {
        cascade(victim, 2);
    } else {
        source.insert(victim);
        out_.add_write(level);
    }
}

}  // namespace bidicache
