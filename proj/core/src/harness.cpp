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

#include "bidicache/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace bidicache {

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool is_bidi(PolicyKind kind) {
    return kind == PolicyKind::BiDiFilter || kind == PolicyKind::BiDiFilterUnited;
}

}  // namespace

std::unique_ptr<EventStream> TraceSource::open() const {
    if (const auto* spec = std::get_if<SyntheticSpec>(&source)) {
        return std::make_unique<SyntheticStream>(*spec);
    }
    return std::make_unique<TraceFileStream>(std::get<std::string>(source), chunk_size);
}

std::string TraceSource::id() const {
    if (const auto* spec = std::get_if<SyntheticSpec>(&source)) {
        std::ostringstream os;
        os << "synthetic:" << spec->length << ':' << spec->ground_set << ':' << format_double(spec->skew) << ':'
           << format_double(spec->recency) << ":seed=" << spec->rng_seed;
        return os.str();
    }
    return std::filesystem::path(std::get<std::string>(source)).filename().string();
}

// ---------------------------------------------------------------------------

SimStats simulate(Policy& policy, EventStream& stream, const EventHook& hook) {
    SimStats stats(policy.level_count());
    while (auto ev = stream.next()) {
        const AccessOutcome& outcome = policy.access(ev->key);
        stats.record(outcome);
        assert(stats.closure_holds());
        if (hook) {
            hook(policy, ev->key, outcome);
        }
    }
    return stats;
}

ResultRow make_row(const std::string& trace_id, const PolicySpec& spec, const SimStats& stats,
                   const LatencyParams& latency) {
    ResultRow row;
    row.trace_id = trace_id;
    row.policy_name = std::string(to_string(spec.kind));
    row.l1_capacity = spec.level_capacities.at(0);
    row.l2_capacity = spec.level_capacities.at(1);
    if (spec.kind == PolicyKind::BiDiFilter) {
        row.window_fraction = spec.window_fraction;
    } else if (spec.kind == PolicyKind::BiDiFilterUnited) {
        row.window_fraction = 1.0;
    }
    row.tie_break = is_bidi(spec.kind) ? std::string(to_string(spec.tie_break)) : "none";
    row.requests = stats.requests();
    row.h_l1_window = stats.hits_l1_window();
    row.h_l1_veterans = stats.hits_l1_veterans();
    row.misses = stats.misses();
    row.w_l1 = stats.writes_at(1);
    for (std::size_t level = 2; level <= stats.levels(); ++level) {
        row.h_l2 += stats.hits_at(level);
        row.w_l2 += stats.writes_at(level);
    }
    row.hit_ratio = hit_ratio(stats);
    row.avg_read_latency_ns = avg_read_latency(stats, latency).count();
    row.avg_rw_latency_ns = avg_rw_latency(stats, latency).count();
    row.rng_seed = spec.rng_seed;
    return row;
}

ResultRow run_single(const PolicySpec& spec, EventStream& trace, const LatencyParams& latency,
                     const std::string& trace_id) {
    latency.validate();
    auto policy = make_policy(spec);
    const SimStats stats = simulate(*policy, trace);
    if (stats.requests() == 0) {
        throw std::invalid_argument("run: trace '" + trace_id + "' is empty");
    }
    return make_row(trace_id, spec, stats, latency);
}

std::vector<std::size_t> resolve_capacities(double l2_percent, double l1_ratio, std::uint64_t uniques,
                                            std::size_t levels) {
    if (levels < 2) {
        throw std::invalid_argument("sweep: at least two levels");
    }
    auto rounded = [](double v) { return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(v))); };
    std::vector<std::size_t> caps(levels);
    caps[1] = rounded(l2_percent * static_cast<double>(uniques));
    caps[0] = rounded(l1_ratio * static_cast<double>(caps[1]));
    for (std::size_t i = 2; i < levels; ++i) {
        caps[i] = rounded(static_cast<double>(caps[i - 1]) / l1_ratio);
    }
    return caps;
}

void SweepSpec::validate() const {
    if (policies.empty() || l2_size_percents.empty() || l1_ratios.empty()) {
        throw std::invalid_argument("sweep: policies, percents and ratios must be non-empty");
    }
    for (double p : l2_size_percents) {
        if (!(p > 0.0 && p <= 1.0)) {
            throw std::invalid_argument("sweep: L2 percent " + format_double(p) + " outside (0, 1]");
        }
    }
    for (double r : l1_ratios) {
        if (!(r > 0.0 && r < 1.0)) {
            throw std::invalid_argument("sweep: L1 ratio " + format_double(r) + " outside (0, 1)");
        }
    }
    if (levels < 2) {
        throw std::invalid_argument("sweep: at least two levels");
    }
    latency.validate();
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::string trace_id = spec.trace.id();

    UniqueCount count;
    {
        auto pass1 = spec.trace.open();
        count = count_uniques(*pass1);
    }
    if (count.accesses == 0) {
        throw std::invalid_argument("sweep: trace '" + trace_id + "' is empty");
    }

    struct Cell {
        PolicySpec policy;
        std::string label;
    };
    std::vector<Cell> cells;
    cells.reserve(spec.cell_count());
    for (const auto& tmpl : spec.policies) {
        for (double pct : spec.l2_size_percents) {
            for (double ratio : spec.l1_ratios) {
                Cell cell{tmpl, {}};
                const std::size_t levels = is_bidi(tmpl.kind) ? spec.levels : 2;
                cell.policy.level_capacities = resolve_capacities(pct, ratio, count.uniques, levels);
                cell.policy.rng_seed = derive_seed(spec.master_seed, cells.size());
                cell.label = "cell #" + std::to_string(cells.size()) + " (policy=" +
                             std::string(to_string(tmpl.kind)) + ", l2_pct=" + format_double(pct) +
                             ", l1_ratio=" + format_double(ratio) + ")";
                cells.push_back(std::move(cell));
            }
        }
    }

    std::vector<ResultRow> rows(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                auto stream = spec.trace.open();
                rows[i] = run_single(cells[i].policy, *stream, spec.latency, trace_id);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    unsigned jobs = spec.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.jobs;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, cells.size()));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }

    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep " + cells[i].label + " failed: " + e.what());
            }
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------

OutputFormat parse_output_format(std::string_view token) {
    if (token == "csv") {
        return OutputFormat::Csv;
    }
    if (token == "jsonl") {
        return OutputFormat::Jsonl;
    }
    throw std::invalid_argument("output format must be csv or jsonl, got '" + std::string(token) + "'");
}

const std::vector<std::string>& result_columns() {
    static const std::vector<std::string> columns{
        "trace_id",  "policy_name", "l2_capacity", "l1_capacity",         "window_fraction",   "tie_break",
        "requests",  "h_l1_window", "h_l1_veterans", "h_l2",              "misses",            "w_l1",
        "w_l2",      "hit_ratio",   "avg_read_latency_ns", "avg_rw_latency_ns", "rng_seed"};
    return columns;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    const auto& cols = result_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.trace_id) << ',' << csv_field(r.policy_name) << ',' << r.l2_capacity << ','
            << r.l1_capacity << ',' << format_double(r.window_fraction) << ',' << csv_field(r.tie_break) << ','
            << r.requests << ',' << r.h_l1_window << ',' << r.h_l1_veterans << ',' << r.h_l2 << ',' << r.misses
            << ',' << r.w_l1 << ',' << r.w_l2 << ',' << format_double(r.hit_ratio) << ','
            << format_double(r.avg_read_latency_ns) << ',' << format_double(r.avg_rw_latency_ns) << ','
            << r.rng_seed << '\n';
    }
}

void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows) {
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["trace_id"] = r.trace_id;
        j["policy_name"] = r.policy_name;
        j["l2_capacity"] = r.l2_capacity;
        j["l1_capacity"] = r.l1_capacity;
        j["window_fraction"] = r.window_fraction;
        j["tie_break"] = r.tie_break;
        j["requests"] = r.requests;
        j["h_l1_window"] = r.h_l1_window;
        j["h_l1_veterans"] = r.h_l1_veterans;
        j["h_l2"] = r.h_l2;
        j["misses"] = r.misses;
        j["w_l1"] = r.w_l1;
        j["w_l2"] = r.w_l2;
        j["hit_ratio"] = r.hit_ratio;
        j["avg_read_latency_ns"] = r.avg_read_latency_ns;
        j["avg_rw_latency_ns"] = r.avg_rw_latency_ns;
        j["rng_seed"] = r.rng_seed;
        out << j.dump() << '\n';
    }
}

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        write_csv(out, rows);
    } else {
        write_jsonl(out, rows);
    }
}

}  // namespace bidicache
