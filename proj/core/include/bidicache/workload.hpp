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
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bidicache/types.hpp"

namespace bidicache {

/// Pull-style source of access events.
class EventStream {
public:
    virtual ~EventStream() = default;
    virtual std::optional<AccessEvent> next() = 0;
};

/// Produces a fresh stream positioned at the start of the same trace.
using StreamFactory = std::function<std::unique_ptr<EventStream>()>;

/// Parameters of the synthetic Zipf + recency trace.
struct SyntheticSpec {
    std::uint64_t length = 1;
    std::uint64_t ground_set = 10;
    double skew = 0.5;
    double recency = 0.0;
    std::uint64_t rng_seed = 0;
    std::size_t recent_buffer_size = 10;

    void validate() const;
};

/// Zipf sampler over ranks 1..n with P(r) proportional to r^-skew, backed by
/// an exact cumulative table and binary search.
class ZipfSampler {
public:
    ZipfSampler(std::uint64_t ground_set, double skew);

    /// Maps u in [0, 1) to a rank.
    std::uint64_t rank_for(double u) const;
    std::uint64_t ground_set() const noexcept { return cdf_.size(); }
    double probability(std::uint64_t rank) const;

private:
    std::vector<double> cdf_;
};

/// Each event repeats one of the last `recent_buffer_size` emitted keys with
/// probability `recency` (duplicates allowed in the buffer), otherwise draws a
/// fresh Zipf rank. The first `recent_buffer_size` events always come from
/// the Zipf branch. Keys are the ranks themselves.
class SyntheticStream final : public EventStream {
public:
    explicit SyntheticStream(const SyntheticSpec& spec);

    std::optional<AccessEvent> next() override;

    std::uint64_t emitted() const noexcept { return emitted_; }
    /// Events that took the recency branch.
    std::uint64_t recent_branch_count() const noexcept { return recent_hits_; }

private:
    double uniform();

    SyntheticSpec spec_;
    ZipfSampler zipf_;
    std::mt19937_64 rng_;
    std::vector<ItemKey> recent_;
    std::size_t recent_head_ = 0;
    std::uint64_t emitted_ = 0;
    std::uint64_t recent_hits_ = 0;
};

// ---------------------------------------------------------------------------
// Trace files

inline constexpr std::uint64_t kDefaultChunkSize = 4096;

/// Thrown for a malformed trace line; line() is 1-based.
class TraceParseError : public std::runtime_error {
public:
    TraceParseError(std::size_t line, const std::string& what)
        : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct TraceRecord {
    std::string key;
    std::optional<std::uint64_t> size;
};

/// Parses one "key[,size_bytes]" line. Returns nullopt for blank lines and
/// '#' comments.
std::optional<TraceRecord> parse_trace_line(std::string_view line, std::size_t line_number);

/// Chunk labels key#0 .. key#(n-1) with n = ceil(size / chunk_size), or one
/// label when the size is absent or zero.
std::vector<std::string> expand_record(const TraceRecord& record, std::uint64_t chunk_size = kDefaultChunkSize);

/// Streams a trace file, splitting records into fixed-size chunks. Chunk
/// labels are interned into dense ids in first-seen order, so two readers of
/// the same file agree on every id.
class TraceFileStream final : public EventStream {
public:
    explicit TraceFileStream(const std::string& path, std::uint64_t chunk_size = kDefaultChunkSize);

    std::optional<AccessEvent> next() override;

    /// Label of an id handed out by this reader.
    const std::string& label(ItemKey key) const { return labels_.at(key); }

private:
    ItemKey intern(const std::string& label);

    std::string path_;
    std::ifstream in_;
    std::uint64_t chunk_size_;
    std::size_t line_number_ = 0;
    std::vector<std::string> pending_;
    std::size_t pending_pos_ = 0;
    std::unordered_map<std::string, ItemKey> ids_;
    std::vector<std::string> labels_;
};

/// In-memory stream over a fixed key sequence.
class VectorStream final : public EventStream {
public:
    explicit VectorStream(std::vector<ItemKey> keys) : keys_(std::move(keys)) {}
    std::optional<AccessEvent> next() override {
        if (pos_ >= keys_.size()) {
            return std::nullopt;
        }
        return AccessEvent{keys_[pos_++]};
    }

private:
    std::vector<ItemKey> keys_;
    std::size_t pos_ = 0;
};

struct UniqueCount {
    std::uint64_t uniques = 0;
    std::uint64_t accesses = 0;

    friend bool operator==(const UniqueCount&, const UniqueCount&) = default;
};

/// Drains `stream`, counting distinct keys and total accesses.
UniqueCount count_uniques(EventStream& stream);

/// Materialises a stream; intended for tests and small traces.
std::vector<ItemKey> collect(EventStream& stream);

}  // namespace bidicache
