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

// bidicache: replay a trace through multilevel cache policies.
//
//   bidicache run   --policy bidifilter --synthetic 100000:10000:0.8:0.2 --l2-pct 0.5 --l1-ratio 1:10
//   bidicache sweep --policy bidifilter,demote --trace t.csv --l2-pct 0.1,0.5 --l1-ratio 1:10,1:100

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "bidicache/harness.hpp"

namespace {

using namespace bidicache;

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": cannot parse '" + s + "' as a number");
    }
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument(what + ": cannot parse '" + s + "' as a non-negative integer");
    }
    return v;
}

// "1:10" or "0.1".
double parse_ratio(const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() == 2) {
        const double num = parse_double(parts[0], "--l1-ratio");
        const double den = parse_double(parts[1], "--l1-ratio");
        if (den == 0.0) {
            throw std::invalid_argument("--l1-ratio: zero denominator in '" + s + "'");
        }
        return num / den;
    }
    return parse_double(s, "--l1-ratio");
}

// "100ns", "200us", "2ms", "1s" or a bare integer meaning nanoseconds.
Nanos parse_duration(const std::string& s) {
    static const std::pair<std::string_view, std::int64_t> units[] = {
        {"ns", 1}, {"us", 1'000}, {"ms", 1'000'000}, {"s", 1'000'000'000}};
    for (const auto& [suffix, scale] : units) {
        if (s.size() > suffix.size() && s.ends_with(suffix)) {
            const std::string number = s.substr(0, s.size() - suffix.size());
            if (!number.empty() && std::isdigit(static_cast<unsigned char>(number.back()))) {
                return Nanos{static_cast<std::int64_t>(parse_u64(number, "--latency")) * scale};
            }
        }
    }
    return Nanos{static_cast<std::int64_t>(parse_u64(s, "--latency"))};
}

LatencyParams parse_latency(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() < 2) {
        throw std::invalid_argument("--latency expects t1[,t2,...],tmiss");
    }
    LatencyParams p;
    p.level.clear();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        p.level.push_back(parse_duration(parts[i]));
    }
    p.miss = parse_duration(parts.back());
    p.validate();
    return p;
}

SyntheticSpec parse_synthetic(const std::string& s, std::uint64_t seed) {
    const auto parts = split(s, ':');
    if (parts.size() != 4) {
        throw std::invalid_argument("--synthetic expects length:ground:skew:recency");
    }
    SyntheticSpec spec;
    spec.length = parse_u64(parts[0], "--synthetic length");
    spec.ground_set = parse_u64(parts[1], "--synthetic ground");
    spec.skew = parse_double(parts[2], "--synthetic skew");
    spec.recency = parse_double(parts[3], "--synthetic recency");
    spec.rng_seed = seed;
    spec.validate();
    return spec;
}

struct Options {
    std::vector<std::string> policies{"bidifilter"};
    std::vector<std::string> l2_pct{"0.5"};
    std::vector<std::string> l1_ratio{"1:10"};
    std::vector<std::string> windows{"0.5"};
    std::vector<std::string> ties{"admit"};
    double promote_p = 0.5;
    double promote_q = 0.5;
    std::size_t levels = 2;
    std::string synthetic;
    std::string trace;
    std::uint64_t chunk_size = kDefaultChunkSize;
    std::string latency;
    std::uint64_t seed = 0;
    std::string out = "-";
    std::string format = "csv";
    unsigned jobs = 0;
    std::string capacities;
};

void add_common(CLI::App& cmd, Options& o, bool lists) {
    const std::string list_note = lists ? " (comma-separated list)" : "";
    auto* policy = cmd.add_option("--policy", o.policies,
                                  "bidifilter | bidifilter-united | demote | naive-lru | promote" + list_note);
    auto* pct = cmd.add_option("--l2-pct", o.l2_pct, "L2 size as a fraction of unique items" + list_note);
    auto* ratio = cmd.add_option("--l1-ratio", o.l1_ratio, "|L1|/|L2|, e.g. 1:10 or 0.1" + list_note);
    auto* window = cmd.add_option("--window", o.windows, "BiDiFilter window share of L1 in [0,1]" + list_note);
    auto* tie = cmd.add_option("--tie", o.ties, "admit | reject" + list_note);
    for (auto* opt : {policy, pct, ratio, window, tie}) {
        opt->delimiter(',');
        if (!lists) {
            opt->expected(1);
        }
    }
    cmd.add_option("--promote-p", o.promote_p, "Promote: probability an L2 hit moves to L1")->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--promote-q", o.promote_q, "Promote: probability an L1 victim is kept in L2")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--levels", o.levels, "number of cache levels for BiDiFilter")->check(CLI::Range(2, 64));
    auto* syn = cmd.add_option("--synthetic", o.synthetic, "synthetic trace length:ground:skew:recency");
    auto* trace = cmd.add_option("--trace", o.trace, "trace file with key[,size_bytes] lines");
    syn->excludes(trace);
    trace->excludes(syn);
    cmd.add_option("--chunk-size", o.chunk_size, "bytes per chunk when splitting trace records")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--latency", o.latency, "t1,t2[,...],tmiss latencies (ns/us/ms/s suffixes; bare = ns)");
    cmd.add_option("--seed", o.seed, "master RNG seed");
    cmd.add_option("--out", o.out, "output path, - for stdout");
    cmd.add_option("--format", o.format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
}

TraceSource make_source(const Options& o) {
    if (!o.synthetic.empty()) {
        return TraceSource::synthetic(parse_synthetic(o.synthetic, o.seed));
    }
    if (!o.trace.empty()) {
        return TraceSource::file(o.trace, o.chunk_size);
    }
    throw std::invalid_argument("one of --synthetic or --trace is required");
}

std::vector<PolicySpec> make_templates(const Options& o) {
    std::vector<PolicySpec> out;
    for (const auto& token : o.policies) {
        PolicySpec base;
        base.kind = parse_policy_kind(token);
        base.promote_p = o.promote_p;
        base.promote_q = o.promote_q;
        if (base.kind == PolicyKind::BiDiFilter) {
            for (const auto& w : o.windows) {
                for (const auto& t : o.ties) {
                    PolicySpec s = base;
                    s.window_fraction = parse_double(w, "--window");
                    s.tie_break = parse_tie_break(t);
                    out.push_back(s);
                }
            }
        } else if (base.kind == PolicyKind::BiDiFilterUnited) {
            for (const auto& t : o.ties) {
                PolicySpec s = base;
                s.tie_break = parse_tie_break(t);
                out.push_back(s);
            }
        } else {
            out.push_back(base);
        }
    }
    return out;
}

void emit(const Options& o, const std::vector<ResultRow>& rows) {
    const auto format = parse_output_format(o.format);
    if (o.out == "-") {
        write_rows(std::cout, rows, format);
        std::cout.flush();
        return;
    }
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + o.out + "'");
    }
    write_rows(file, rows, format);
    if (!file.flush()) {
        throw std::runtime_error("failed writing output file '" + o.out + "'");
    }
}

void run_command(const Options& o) {
    const TraceSource source = make_source(o);
    const LatencyParams latency = o.latency.empty() ? LatencyParams::defaults() : parse_latency(o.latency);
    auto templates = make_templates(o);
    if (templates.size() != 1) {
        throw std::invalid_argument("run takes exactly one policy configuration; use sweep for several");
    }
    PolicySpec spec = templates.front();
    spec.rng_seed = o.seed;
    const bool bidi = spec.kind == PolicyKind::BiDiFilter || spec.kind == PolicyKind::BiDiFilterUnited;
    if (!o.capacities.empty()) {
        for (const auto& c : split(o.capacities, ',')) {
            spec.level_capacities.push_back(parse_u64(c, "--capacities"));
        }
    } else {
        auto pass1 = source.open();
        const auto count = count_uniques(*pass1);
        const double pct = parse_double(o.l2_pct.front(), "--l2-pct");
        const double ratio = parse_ratio(o.l1_ratio.front());
        if (!(pct > 0.0 && pct <= 1.0) || !(ratio > 0.0 && ratio < 1.0)) {
            throw std::invalid_argument("--l2-pct must be in (0,1] and --l1-ratio in (0,1)");
        }
        spec.level_capacities = resolve_capacities(pct, ratio, count.uniques, bidi ? o.levels : 2);
    }
    auto stream = source.open();
    emit(o, {run_single(spec, *stream, latency, source.id())});
}

void sweep_command(const Options& o) {
    SweepSpec spec{make_source(o), {}, {}, make_templates(o), o.levels,
                   o.latency.empty() ? LatencyParams::defaults() : parse_latency(o.latency), o.seed, o.jobs};
    for (const auto& p : o.l2_pct) {
        spec.l2_size_percents.push_back(parse_double(p, "--l2-pct"));
    }
    for (const auto& r : o.l1_ratio) {
        spec.l1_ratios.push_back(parse_ratio(r));
    }
    emit(o, run_sweep(spec));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-driven simulator for bidirectional frequency-filtered multilevel caches"};
    app.require_subcommand(1);

    Options run_opts;
    auto* run = app.add_subcommand("run", "simulate a single policy configuration");
    add_common(*run, run_opts, false);
    run->add_option("--capacities", run_opts.capacities, "explicit level capacities L1,L2[,...] in items");

    Options sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "simulate every policy x L2 size x L1 ratio cell");
    add_common(*sweep, sweep_opts, true);
    sweep->add_option("--jobs", sweep_opts.jobs, "worker threads, 0 = all cores");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            run_command(run_opts);
        } else {
            sweep_command(sweep_opts);
        }
    } catch (const std::exception& e) {
        std::cerr << "bidicache: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
