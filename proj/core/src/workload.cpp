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

#include "bidicache/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_set>

namespace bidicache {

void SyntheticSpec::validate() const {
    if (length == 0) {
        throw std::invalid_argument("synthetic: length must be positive");
    }
    if (!(skew > 0.0 && skew < 1.0)) {
        throw std::invalid_argument("synthetic: skew must lie in (0, 1)");
    }
    if (!(recency >= 0.0 && recency <= 1.0)) {
        throw std::invalid_argument("synthetic: recency must lie in [0, 1]");
    }
    if (recent_buffer_size == 0) {
        throw std::invalid_argument("synthetic: recent buffer size must be positive");
    }
    if (ground_set < recent_buffer_size) {
        throw std::invalid_argument("synthetic: ground set smaller than the recent buffer");
    }
}

// ---------------------------------------------------------------------------

ZipfSampler::ZipfSampler(std::uint64_t ground_set, double skew) {
    if (ground_set == 0) {
        throw std::invalid_argument("zipf: ground set must be positive");
    }
    cdf_.resize(ground_set);
    long double total = 0.0L;
    for (std::uint64_t r = 1; r <= ground_set; ++r) {
        total += std::pow(static_cast<long double>(r), -static_cast<long double>(skew));
        cdf_[r - 1] = static_cast<double>(total);
    }
    const double norm = static_cast<double>(total);
    for (auto& c : cdf_) {
        c /= norm;
    }
    cdf_.back() = 1.0;
}

std::uint64_t ZipfSampler::rank_for(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), cdf_.size() - 1));
    return idx + 1;
}

double ZipfSampler::probability(std::uint64_t rank) const {
    if (rank == 0 || rank > cdf_.size()) {
        return 0.0;
    }
    return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

// ---------------------------------------------------------------------------

SyntheticStream::SyntheticStream(const SyntheticSpec& spec)
    : spec_((spec.validate(), spec)), zipf_(spec.ground_set, spec.skew), rng_(spec.rng_seed) {
    recent_.reserve(spec_.recent_buffer_size);
}

double SyntheticStream::uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::optional<AccessEvent> SyntheticStream::next() {
    if (emitted_ >= spec_.length) {
        return std::nullopt;
    }
    ItemKey key;
    const bool seeded = recent_.size() == spec_.recent_buffer_size;
    if (seeded && uniform() < spec_.recency) {
        const auto slot = static_cast<std::size_t>(uniform() * static_cast<double>(recent_.size()));
        key = recent_[std::min(slot, recent_.size() - 1)];
        ++recent_hits_;
    } else {
        key = zipf_.rank_for(uniform());
    }
    if (!seeded) {
        recent_.push_back(key);
    } else {
        recent_[recent_head_] = key;
        recent_head_ = (recent_head_ + 1) % recent_.size();
    }
    ++emitted_;
    return AccessEvent{key};
}

// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

std::optional<TraceRecord> parse_trace_line(std::string_view line, std::size_t line_number) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
        return std::nullopt;
    }
    const auto comma = body.find(',');
    TraceRecord record;
    record.key = std::string(trim(body.substr(0, comma)));
    if (record.key.empty()) {
        throw TraceParseError(line_number, "empty key");
    }
    if (comma == std::string_view::npos) {
        return record;
    }
    const std::string_view size_field = trim(body.substr(comma + 1));
    if (size_field.find(',') != std::string_view::npos) {
        throw TraceParseError(line_number, "expected key[,size_bytes]");
    }
    if (size_field.empty()) {
        throw TraceParseError(line_number, "empty size field");
    }
    std::uint64_t size = 0;
    const auto [ptr, ec] = std::from_chars(size_field.data(), size_field.data() + size_field.size(), size);
    if (ec != std::errc{} || ptr != size_field.data() + size_field.size()) {
        throw TraceParseError(line_number, "size '" + std::string(size_field) + "' is not a non-negative integer");
    }
    record.size = size;
    return record;
}

std::vector<std::string> expand_record(const TraceRecord& record, std::uint64_t chunk_size) {
    if (chunk_size == 0) {
        throw std::invalid_argument("chunk size must be positive");
    }
    std::uint64_t chunks = 1;
    if (record.size && *record.size > 0) {
        chunks = (*record.size + chunk_size - 1) / chunk_size;
    }
    std::vector<std::string> out;
    out.reserve(chunks);
    for (std::uint64_t i = 0; i < chunks; ++i) {
        out.push_back(record.key + "#" + std::to_string(i));
    }
    return out;
}

TraceFileStream::TraceFileStream(const std::string& path, std::uint64_t chunk_size)
    : path_(path), in_(path), chunk_size_(chunk_size) {
    if (chunk_size_ == 0) {
        throw std::invalid_argument("chunk size must be positive");
    }
    if (!in_) {
        throw std::runtime_error("cannot open trace file '" + path + "'");
    }
}

ItemKey TraceFileStream::intern(const std::string& label) {
    const auto [it, inserted] = ids_.try_emplace(label, labels_.size());
    if (inserted) {
        labels_.push_back(label);
    }
    return it->second;
}

std::optional<AccessEvent> TraceFileStream::next() {
    while (pending_pos_ >= pending_.size()) {
        std::string line;
        if (!std::getline(in_, line)) {
            if (in_.bad()) {
                throw std::runtime_error("I/O error while reading trace file '" + path_ + "'");
            }
            return std::nullopt;
        }
        ++line_number_;
        auto record = parse_trace_line(line, line_number_);
        if (!record) {
            continue;
        }
        pending_ = expand_record(*record, chunk_size_);
        pending_pos_ = 0;
    }
    return AccessEvent{intern(pending_[pending_pos_++])};
}

// ---------------------------------------------------------------------------

UniqueCount count_uniques(EventStream& stream) {
    std::unordered_set<ItemKey> seen;
    UniqueCount out;
    while (auto ev = stream.next()) {
        seen.insert(ev->key);
        ++out.accesses;
    }
    out.uniques = seen.size();
    return out;
}

std::vector<ItemKey> collect(EventStream& stream) {
    std::vector<ItemKey> out;
    while (auto ev = stream.next()) {
        out.push_back(ev->key);
    }
    return out;
}

}  // namespace bidicache
