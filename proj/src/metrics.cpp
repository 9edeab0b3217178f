// SPDX-License-Identifier: Apache-2.0

#include "uassoc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace uassoc
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

std::vector<double> association_delay(const GameResult &result, GameKind kind)
{
    std::vector<double> out;
    for (std::size_t k = 0; k < result.beta.size(); ++k)
    {
        if (!result.beta.associated(k))
            continue;
        out.push_back(is_early_acceptance(kind) ? result.trace.applications[k] : result.trace.iterations);
    }
    return out;
}

std::vector<double> association_power(const GameResult &result)
{
    std::vector<double> out;
    for (std::size_t k = 0; k < result.beta.size(); ++k)
        if (result.beta.associated(k))
            out.push_back(result.trace.applications[k]);
    return out;
}

double unassociated_fraction(const AssociationVector &beta)
{
    if (beta.size() == 0)
        return 0.0;
    return static_cast<double>(beta.size() - beta.num_associated()) / static_cast<double>(beta.size());
}

TrialMetrics game_metrics(const std::vector<const GameResult *> &results, GameKind kind,
                          const AssociationVector &final_beta, double utility)
{
    if (results.empty())
        throw std::invalid_argument("At least one game result is required.");
    const std::size_t K = final_beta.size();
    std::vector<double> delay(K, 0.0), power(K, 0.0);
    int iterations = 0;
    for (const auto *r : results)
    {
        if (r->beta.size() != K)
            throw std::invalid_argument("Game results disagree on the number of UEs.");
        for (std::size_t k = 0; k < K; ++k)
        {
            delay[k] += is_early_acceptance(kind) ? r->trace.applications[k] : r->trace.iterations;
            power[k] += r->trace.applications[k];
        }
        iterations += r->trace.iterations;
    }

    TrialMetrics m;
    for (std::size_t k = 0; k < K; ++k)
        if (final_beta.associated(k))
        {
            m.delay_samples.push_back(delay[k]);
            m.power_samples.push_back(power[k]);
        }
    m.avg_delay = mean(m.delay_samples);
    m.p25_delay = percentile(m.delay_samples, 25.0);
    m.p75_delay = percentile(m.delay_samples, 75.0);
    m.avg_power = mean(m.power_samples);
    m.unassociated_fraction = unassociated_fraction(final_beta);
    m.utility = utility;
    m.iterations = iterations;
    return m;
}

TrialMetrics baseline_metrics(const AssociationVector &beta, double utility)
{
    TrialMetrics m;
    m.avg_delay = m.p25_delay = m.p75_delay = m.avg_power = kNaN;
    m.unassociated_fraction = unassociated_fraction(beta);
    m.utility = utility;
    return m;
}

double mean(const std::vector<double> &values)
{
    if (values.empty())
        return kNaN;
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double percentile(std::vector<double> values, double p)
{
    if (values.empty())
        return kNaN;
    if (p < 0.0 || p > 100.0)
        throw std::invalid_argument("Percentile must lie in [0, 100].");
    std::sort(values.begin(), values.end());
    const double pos = p / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Aggregate aggregate(const std::vector<double> &values)
{
    std::vector<double> v;
    for (double x : values)
        if (!std::isnan(x))
            v.push_back(x);

    Aggregate a;
    a.count = v.size();
    a.mean = mean(v);
    a.p25 = percentile(v, 25.0);
    a.median = percentile(v, 50.0);
    a.p75 = percentile(v, 75.0);
    for (double x : v)
        ++a.histogram[static_cast<long>(std::floor(x))];
    return a;
}

} // namespace uassoc
