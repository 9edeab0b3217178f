// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo driver. Trial t uses seed base + t; every selected scheme runs
// on the same topology and channel realization within a trial.

#pragma once

#include "uassoc/config.hpp"
#include "uassoc/metrics.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uassoc
{

struct SchemeOutcome
{
    Scheme scheme;
    AssociationVector beta;
    TrialMetrics metrics;
    std::string event_log; // filled only when event logs are requested
};

struct TrialOutcome
{
    int trial = 0;
    std::uint64_t seed = 0;
    std::size_t num_ues = 0;
    std::size_t num_bss = 0;
    std::vector<SchemeOutcome> schemes; // in cfg.schemes order
};

TrialOutcome run_trial(const ExperimentConfig &cfg, int trial);

/// Runs cfg.trials trials on up to cfg.jobs threads; the result is ordered by
/// trial index.
std::vector<TrialOutcome> run_trials(const ExperimentConfig &cfg);

/// Leading key column(s) for sweep output.
struct SweepKey
{
    std::string axis;
    double value = 0.0;
};

void write_results_header(std::ostream &os, bool with_key);
void write_results_rows(std::ostream &os, const std::vector<TrialOutcome> &trials,
                        const std::optional<SweepKey> &key = std::nullopt);

void write_summary_header(std::ostream &os, bool with_key);
void write_summary_rows(std::ostream &os, const std::vector<TrialOutcome> &trials,
                        const std::optional<SweepKey> &key = std::nullopt);

void write_samples_header(std::ostream &os, bool with_key);
void write_samples_rows(std::ostream &os, const std::vector<TrialOutcome> &trials,
                        const std::optional<SweepKey> &key = std::nullopt);

/// Writes results.csv, summary.csv, samples.csv (with dump_samples) and
/// events/trial<t>_<scheme>.tsv (with event_logs) under cfg.out. Throws
/// std::runtime_error when the directory cannot be written.
std::vector<TrialOutcome> run_experiment(const ExperimentConfig &cfg);

enum class SweepAxis
{
    NumUes,    // K
    NumBss,    // J: one MCBS plus J - 1 SCBSs on the ring
    ScbsQuota
};

std::optional<SweepAxis> parse_sweep_axis(std::string_view name);
const char *to_string(SweepAxis axis);

/// Config for one point of a sweep.
ExperimentConfig apply_sweep_value(ExperimentConfig cfg, SweepAxis axis, int value);

/// Same outputs as run_experiment, each file keyed by (axis, value).
void sweep(const ExperimentConfig &cfg, SweepAxis axis, const std::vector<int> &values);

} // namespace uassoc
