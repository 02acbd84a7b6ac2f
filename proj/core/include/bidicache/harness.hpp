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
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bidicache/metrics.hpp"
#include "bidicache/policy.hpp"
#include "bidicache/workload.hpp"

namespace bidicache {

/// Where a sweep's accesses come from. Every open() returns an independent
/// stream positioned at the start of the same trace.
struct TraceSource {
    std::variant<SyntheticSpec, std::string> source;
    std::uint64_t chunk_size = kDefaultChunkSize;

    static TraceSource synthetic(const SyntheticSpec& spec) { return {spec, kDefaultChunkSize}; }
    static TraceSource file(std::string path, std::uint64_t chunk = kDefaultChunkSize) {
        return {std::move(path), chunk};
    }

    std::unique_ptr<EventStream> open() const;
    std::string id() const;
};

/// One output row per (trace, policy, size, ratio) cell. For hierarchies
/// deeper than two levels, h_l2 and w_l2 aggregate every level below L1.
struct ResultRow {
    std::string trace_id;
    std::string policy_name;
    std::uint64_t l2_capacity = 0;
    std::uint64_t l1_capacity = 0;
    double window_fraction = 0.0;
    std::string tie_break;
    std::uint64_t requests = 0;
    std::uint64_t h_l1_window = 0;
    std::uint64_t h_l1_veterans = 0;
    std::uint64_t h_l2 = 0;
    std::uint64_t misses = 0;
    std::uint64_t w_l1 = 0;
    std::uint64_t w_l2 = 0;
    double hit_ratio = 0.0;
    double avg_read_latency_ns = 0.0;
    double avg_rw_latency_ns = 0.0;
    std::uint64_t rng_seed = 0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Called after every simulated event; used by invariant sweeps.
using EventHook = std::function<void(const Policy&, ItemKey, const AccessOutcome&)>;

/// Replays `stream` through `policy` and returns the accumulated counters.
SimStats simulate(Policy& policy, EventStream& stream, const EventHook& hook = {});

ResultRow make_row(const std::string& trace_id, const PolicySpec& spec, const SimStats& stats,
                   const LatencyParams& latency);

/// Runs one cell. Rejects zero capacities and empty traces.
ResultRow run_single(const PolicySpec& spec, EventStream& trace, const LatencyParams& latency,
                     const std::string& trace_id = "trace");

/// L2 = max(1, round(percent * uniques)), L1 = max(1, round(ratio * L2));
/// any deeper level is max(1, round(previous / ratio)).
std::vector<std::size_t> resolve_capacities(double l2_percent, double l1_ratio, std::uint64_t uniques,
                                            std::size_t levels = 2);

struct SweepSpec {
    TraceSource trace;
    std::vector<double> l2_size_percents;
    /// |L1| / |L2|.
    std::vector<double> l1_ratios;
    /// Templates; level capacities and seeds are filled in per cell.
    std::vector<PolicySpec> policies;
    std::size_t levels = 2;
    LatencyParams latency;
    std::uint64_t master_seed = 0;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned jobs = 1;

    void validate() const;
    std::size_t cell_count() const noexcept {
        return policies.size() * l2_size_percents.size() * l1_ratios.size();
    }
};

/// Two passes: count uniques to size the levels, then run every
/// policy x percent x ratio cell. Rows come back in that nesting order,
/// independent of `jobs`. A failing cell aborts with its coordinates.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

enum class OutputFormat { Csv, Jsonl };
OutputFormat parse_output_format(std::string_view token);

/// Column order of both serialisations.
const std::vector<std::string>& result_columns();

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows);
void write_rows(std::ostream& out, const std::vector<ResultRow>& rows, OutputFormat format);

}  // namespace bidicache
