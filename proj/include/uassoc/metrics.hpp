// SPDX-License-Identifier: Apache-2.0
//
// Per-trial evaluation metrics (association delay, association power,
// unassociated fraction, sum-rate utility) and their Monte-Carlo aggregates.
// Delay is counted in iterations and power in applications.

#pragma once

#include "uassoc/games.hpp"

#include <map>
#include <vector>

namespace uassoc
{

/// Per-UE delay for associated UEs, in UE index order. DA: every associated
/// UE waits N_iter. Early-acceptance games: N_appl_k.
std::vector<double> association_delay(const GameResult &result, GameKind kind);

/// Per-UE application count for associated UEs, in UE index order.
std::vector<double> association_power(const GameResult &result);

/// |U| / K; 0 for an empty vector.
double unassociated_fraction(const AssociationVector &beta);

struct TrialMetrics
{
    std::vector<double> delay_samples; // empty for baselines
    std::vector<double> power_samples;
    double avg_delay = 0.0;            // NaN without samples
    double p25_delay = 0.0;
    double p75_delay = 0.0;
    double avg_power = 0.0;
    double unassociated_fraction = 0.0;
    double utility = 0.0;
    int iterations = 0;
};

/// Metrics for a game run. Delay and power are summed over `results` per UE,
/// which covers multi-game runs where each UE goes through every round.
TrialMetrics game_metrics(const std::vector<const GameResult *> &results, GameKind kind,
                          const AssociationVector &final_beta, double utility);

/// Metrics for a baseline with no signaling: delay and power are NaN.
TrialMetrics baseline_metrics(const AssociationVector &beta, double utility);

double mean(const std::vector<double> &values);

/// Linear interpolation between closest ranks; NaN for an empty input.
double percentile(std::vector<double> values, double p);

struct Aggregate
{
    std::size_t count = 0;
    double mean = 0.0;
    double p25 = 0.0;
    double median = 0.0;
    double p75 = 0.0;
    std::map<long, std::size_t> histogram; // bin floor(x) -> count (width 1)
};

/// NaN entries are skipped.
Aggregate aggregate(const std::vector<double> &values);

} // namespace uassoc
