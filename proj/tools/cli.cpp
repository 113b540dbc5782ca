// SPDX-License-Identifier: Apache-2.0
//
// physec - channel based message authentication toolkit
// Copyright (C) 2026 The physec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "physec/evaluation.hpp"
#include "physec/number_format.hpp"
#include "physec/trace_io.hpp"

namespace physec::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string preset = "full";
    std::optional<std::uint64_t> seed;
    std::vector<std::size_t> m;
    std::optional<std::size_t> m_full;
    std::vector<double> snr;
    std::optional<double> attack;
    std::optional<std::size_t> blocks;
    std::optional<std::size_t> block_size;
    std::optional<std::string> coherence;
    std::optional<std::size_t> taps;
    std::optional<double> decay_db;
    std::optional<double> rician_k;
    std::optional<double> fa;
    std::optional<std::size_t> components;
    std::vector<std::string> detectors;
    std::optional<std::string> feature;
    std::optional<std::string> delta_mapping;
    std::optional<std::string> mse_reference;
    std::optional<std::string> labeling;
    std::optional<std::string> attacker;
    bool no_update = false;
    bool compare_updates = false;
    bool roc = false;
    std::string trace;
    std::string out;
    std::string desc;
};

struct Job {
    std::string label;
    ExperimentConfig config;
};

struct Row {
    Job job;
    TrialResult result;
};

std::string optional_field(const std::optional<double> &v)
{
    return v ? format_double(*v) : std::string();
}

double parse_coherence(const std::string &text)
{
    if (text == "inf" || text == "infinity")
        return std::numeric_limits<double>::infinity();
    const auto v = parse_double(text);
    if (!v || !(*v > 0.0))
        throw UsageError("--coherence must be a positive number or 'inf', got '" + text + "'.");
    return *v;
}

std::optional<std::uint64_t> seed_from_environment()
{
    const char *env = std::getenv("PHYSEC_SEED");
    if (env == nullptr || *env == '\0')
        return std::nullopt;
    const auto v = parse_int<std::uint64_t>(env);
    if (!v)
        throw UsageError(std::string("PHYSEC_SEED must be an unsigned integer, got '") + env + "'.");
    return v;
}

ExperimentConfig base_config(const Options &o)
{
    ExperimentConfig c = o.preset == "desk" ? ExperimentConfig::desk_preset() : ExperimentConfig{};
    if (o.m_full)
        c.m_full = *o.m_full;
    if (o.attack)
        c.attack_intensity = *o.attack;
    if (o.blocks)
        c.num_blocks = *o.blocks;
    if (o.block_size)
        c.block_size = *o.block_size;
    if (o.coherence)
        c.coherence_samples = parse_coherence(*o.coherence);
    if (o.taps)
        c.num_taps = *o.taps;
    if (o.decay_db)
        c.tap_decay_db = *o.decay_db;
    if (o.rician_k)
        c.rician_k = *o.rician_k;
    if (o.fa)
        c.target_false_alarm = *o.fa;
    if (o.components)
        c.num_components = *o.components;
    if (o.feature)
        c.feature_kind = *o.feature == "delta" ? FeatureKind::Delta : FeatureKind::NormalizedMagnitude;
    if (o.delta_mapping)
        c.delta_mapping = *o.delta_mapping == "realimag" ? DeltaMapping::RealImag : DeltaMapping::Magnitude;
    if (o.mse_reference)
        c.mse_reference = *o.mse_reference == "training-mean" ? MseReference::TrainingMean
                                                                : MseReference::TrackAccepted;
    if (o.labeling)
        c.update_labeling = *o.labeling == "oracle" ? UpdateLabeling::Oracle : UpdateLabeling::DecisionDirected;
    if (o.attacker)
        c.attacker_filter = *o.attacker == "imitation" ? AttackerFilter::PerfectImitation : AttackerFilter::Identity;
    c.update_enabled = !o.no_update;
    if (o.seed)
        c.rng_seed = *o.seed;
    if (!o.snr.empty())
        c.snr_db = o.snr.front();
    return c;
}

std::string gmm_label(const ExperimentConfig &c)
{
    if (!c.update_enabled)
        return "gmm-noupdate";
    return c.update_labeling == UpdateLabeling::Oracle ? "gmm-oracle" : "gmm";
}

std::vector<Job> build_jobs(const Options &o, const ExperimentConfig &base, const std::vector<std::size_t> &m_values)
{
    const std::vector<double> snrs = o.snr.empty() ? std::vector<double>{base.snr_db} : o.snr;
    const std::vector<std::string> detectors = o.detectors.empty() ? std::vector<std::string>{"gmm"} : o.detectors;
    std::vector<Job> jobs;
    for (const auto &d : detectors)
        for (double snr : snrs)
            for (auto m : m_values)
            {
                ExperimentConfig c = base;
                c.snr_db = snr;
                c.m_subcarriers = m;
                if (d == "mse")
                {
                    c.detector = DetectorKind::Mse;
                    jobs.push_back({"mse", c});
                    continue;
                }
                c.detector = DetectorKind::Gmm;
                if (o.compare_updates)
                {
                    c.update_enabled = true;
                    jobs.push_back({gmm_label(c), c});
                    c.update_enabled = false;
                }
                jobs.push_back({gmm_label(c), c});
            }
    for (const auto &j : jobs)
    {
        try
        {
            j.config.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw UsageError(e.what());
        }
    }
    return jobs;
}

// Independent runs execute concurrently; rows keep the job order.
std::vector<Row> execute(const std::vector<Job> &jobs, const CsiTrace *trace)
{
    std::vector<std::future<TrialResult>> pending;
    pending.reserve(jobs.size());
    for (const auto &job : jobs)
        pending.push_back(std::async(std::launch::async, [&job, trace] {
            if (trace == nullptr)
                return run_experiment(job.config);
            TraceSource source(*trace);
            return run_experiment(job.config, source);
        }));
    std::vector<Row> rows;
    rows.reserve(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i)
        rows.push_back({jobs[i], pending[i].get()});
    return rows;
}

void write_results(std::ostream &os, const std::vector<Row> &rows, bool from_trace)
{
    os << kResultsHeader << '\n';
    for (const auto &r : rows)
    {
        const auto &c = r.job.config;
        os << r.job.label << ',' << c.m_subcarriers << ',' << (from_trace ? "" : format_double(c.snr_db)) << ','
           << format_double(c.target_false_alarm) << ',' << optional_field(r.result.p_fa) << ','
           << optional_field(r.result.p_d) << ',' << optional_field(r.result.p_md) << ',' << c.num_blocks << ','
           << c.rng_seed << '\n';
    }
}

void write_roc(std::ostream &os, const std::vector<Row> &rows)
{
    os << kRocHeader << '\n';
    for (const auto &r : rows)
        for (const auto &pt : r.result.roc().points)
            os << r.job.label << ',' << r.job.config.m_subcarriers << ',' << format_double(pt.p_fa) << ','
               << format_double(pt.p_d) << '\n';
}

void print_summary(std::ostream &os, const std::vector<Row> &rows, bool from_trace)
{
    auto cell = [](const std::optional<double> &v) {
        std::ostringstream s;
        if (v)
            s << std::fixed << std::setprecision(5) << *v;
        else
            s << "-";
        return s.str();
    };
    os << std::left << std::setw(14) << "detector" << std::right << std::setw(5) << "M" << std::setw(9) << "snr_db"
       << std::setw(10) << "target_fa" << std::setw(12) << "realized_fa" << std::setw(10) << "p_d" << std::setw(10)
       << "p_md" << '\n';
    for (const auto &r : rows)
    {
        const auto &c = r.job.config;
        os << std::left << std::setw(14) << r.job.label << std::right << std::setw(5) << c.m_subcarriers
           << std::setw(9) << (from_trace ? "-" : format_double(c.snr_db)) << std::setw(10) << format_double(c.target_false_alarm)
           << std::setw(12) << cell(r.result.p_fa) << std::setw(10) << cell(r.result.p_d) << std::setw(10)
           << cell(r.result.p_md) << '\n';
    }
}

template <typename Writer>
void write_file(const std::string &path, Writer &&writer)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    writer(file);
    file.flush();
    if (!file)
        throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_simulate(const Options &o, std::ostream &out)
{
    if (o.out.empty())
        throw UsageError("simulate requires --out.");
    if (!o.trace.empty())
        throw UsageError("simulate does not take --trace.");
    ExperimentConfig c = base_config(o);
    c.m_subcarriers = o.m.empty() ? std::min(c.m_subcarriers, c.m_full) : o.m.front();
    try
    {
        c.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw UsageError(e.what());
    }
    CsiTrace trace = simulate_trace(c);
    if (!o.desc.empty())
        trace.header.description = o.desc;
    write_trace(trace, o.out);
    out << "wrote " << trace.records.size() << " records to " << o.out << '\n';
    return kOk;
}

int cmd_evaluate(const Options &o, const std::string &mode, std::ostream &out)
{
    const bool roc = o.roc || mode == "roc";
    if ((roc || mode == "sweep") && o.out.empty())
        throw UsageError(mode + (o.roc ? " --roc" : "") + " requires --out.");
    if (roc && o.snr.size() > 1)
        throw UsageError("ROC export takes a single --snr value.");

    ExperimentConfig base = base_config(o);
    std::optional<CsiTrace> trace;
    if (!o.trace.empty())
    {
        trace = read_trace(o.trace);
        base.m_full = trace->header.m_full;
        if (!o.blocks)
        {
            const std::size_t bob = TraceSource(*trace).bob_records();
            base.num_blocks = bob / base.block_size;
        }
    }

    std::vector<std::size_t> m_values = o.m;
    if (m_values.empty())
    {
        if (mode == "sweep")
        {
            for (std::size_t m : {1, 2, 4, 8, 12, 16, 24, 32, 48})
                if (m <= base.m_full)
                    m_values.push_back(m);
        }
        else
            m_values.push_back(std::min<std::size_t>(16, base.m_full));
    }
    if (trace)
        for (auto m : m_values)
            if (m > base.m_full)
                throw std::runtime_error("trace has m_full=" + std::to_string(base.m_full) + ", cannot select M=" +
                                         std::to_string(m));

    const auto jobs = build_jobs(o, base, m_values);
    const auto rows = execute(jobs, trace ? &*trace : nullptr);

    if (roc)
    {
        for (const auto &r : rows)
            if (!r.result.p_d || !r.result.p_fa)
                throw UsageError("ROC export needs both legitimate and attacker test messages.");
        write_file(o.out, [&](std::ostream &os) { write_roc(os, rows); });
    }
    else if (!o.out.empty())
        write_file(o.out, [&](std::ostream &os) { write_results(os, rows, trace.has_value()); });
    print_summary(out, rows, trace.has_value());
    return kOk;
}

void add_options(CLI::App &app, Options &o)
{
    app.set_config("--config", "", "Flat key=value settings file ('#' comments); flags take precedence");
    app.add_option("--preset", o.preset, "Experiment scale: full (100 x 1000) or desk (10 x 200)")
        ->check(CLI::IsMember({"full", "desk"}));
    app.add_option("--seed", o.seed, "Base RNG seed (PHYSEC_SEED overrides)");
    app.add_option("--m", o.m, "Estimated subcarriers M, comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app.add_option("--m-full", o.m_full, "Subcarriers of the full channel estimate")->check(CLI::PositiveNumber);
    app.add_option("--snr", o.snr, "Estimation SNR in dB, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(-100.0, 200.0));
    app.add_option("--attack", o.attack, "Probability that a test message comes from the attacker")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--blocks", o.blocks, "Blocks including the training block")->check(CLI::Range(2, 1000000));
    app.add_option("--block-size", o.block_size, "Messages per block")->check(CLI::Range(1, 100000000));
    app.add_option("--coherence", o.coherence, "Coherence time in estimation intervals, or 'inf'");
    app.add_option("--taps", o.taps, "Channel taps")->check(CLI::PositiveNumber);
    app.add_option("--decay-db", o.decay_db, "Power decay per tap in dB")->check(CLI::Range(0.0, 100.0));
    app.add_option("--rician-k", o.rician_k, "Rician K factor of the first tap")->check(CLI::Range(0.0, 1e6));
    app.add_option("--fa", o.fa, "Target false-alarm rate")->check(CLI::Range(1e-9, 1.0 - 1e-9));
    app.add_option("--components", o.components, "Mixture components K")->check(CLI::Range(1, 64));
    app.add_option("--detector", o.detectors, "gmm and/or mse (repeatable)")
        ->delimiter(',')
        ->check(CLI::IsMember({"gmm", "mse"}));
    app.add_option("--feature", o.feature, "magnitude or delta")->check(CLI::IsMember({"magnitude", "delta"}));
    app.add_option("--delta-mapping", o.delta_mapping, "magnitude or realimag")
        ->check(CLI::IsMember({"magnitude", "realimag"}));
    app.add_option("--mse-reference", o.mse_reference, "track or training-mean")
        ->check(CLI::IsMember({"track", "training-mean"}));
    app.add_option("--labeling", o.labeling, "Update labels: decision or oracle")
        ->check(CLI::IsMember({"decision", "oracle"}));
    app.add_option("--attacker", o.attacker, "independent or imitation")
        ->check(CLI::IsMember({"independent", "imitation"}));
    app.add_flag("--no-update", o.no_update, "Keep the trained model fixed");
    app.add_flag("--compare-updates", o.compare_updates, "Report the GMM with and without block updates");
    app.add_flag("--roc", o.roc, "Write the ROC table instead of the results table");
    app.add_option("--trace", o.trace, "Read channel estimates from a CSI trace instead of simulating")
        ->check(CLI::ExistingFile);
    app.add_option("--out", o.out, "Output file");
    app.add_option("--desc", o.desc, "Trace description (simulate)");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Channel based message authentication experiments", "physec"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    add_options(app, o);
    auto *simulate = app.add_subcommand("simulate", "Write a simulated CSI trace");
    auto *evaluate = app.add_subcommand("evaluate", "Run detectors and report detection rates");
    auto *roc = app.add_subcommand("roc", "Write detector ROC tables");
    auto *sweep = app.add_subcommand("sweep", "Grid over M, SNR and detector");
    for (auto *sub : {simulate, evaluate, roc, sweep})
        sub->footer("Shared options (see 'physec --help') may follow the subcommand.");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try
    {
        if (auto env = seed_from_environment())
            o.seed = env;
        if (o.coherence)
            parse_coherence(*o.coherence);
        if (*simulate)
            return cmd_simulate(o, out);
        if (*evaluate)
            return cmd_evaluate(o, "evaluate", out);
        if (*roc)
            return cmd_evaluate(o, "roc", out);
        if (*sweep)
            return cmd_evaluate(o, "sweep", out);
    }
    catch (const UsageError &e)
    {
        err << "error: " << e.what() << "\nRun with --help for more information.\n";
        return kUsage;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

int main(int argc, char **argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace physec::cli
