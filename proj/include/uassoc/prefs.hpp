// SPDX-License-Identifier: Apache-2.0
//
// Preference lists for both sides of the association game.

#pragma once

#include "uassoc/beamrate.hpp"
#include "uassoc/channel.hpp"
#include "uassoc/netmodel.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <vector>

namespace uassoc
{

struct RankedEntry
{
    int index = 0;
    double value = 0.0;

    bool operator==(const RankedEntry &) const = default;
};

/// ue_lists[k] ranks BSs for UE k, bs_lists[j] ranks UEs for BS j. Each list
/// is sorted by value descending with ties broken by ascending index.
struct PreferenceLists
{
    std::vector<std::vector<RankedEntry>> ue_lists;
    std::vector<std::vector<RankedEntry>> bs_lists;

    std::vector<std::vector<int>> ue_order() const;
    std::vector<std::vector<int>> bs_order() const;
};

/// K x J mask of admissible pairs; an empty mask admits every pair.
using Admissibility = std::vector<std::vector<bool>>;

enum class PreferenceMethod
{
    Rate,
    ChannelNorm,
    Cqi
};

std::optional<PreferenceMethod> parse_preference_method(std::string_view name);
const char *to_string(PreferenceMethod method);

/// Ranks the symmetric value table psi (K x J) on both sides, dropping pairs
/// excluded by `admissible`.
PreferenceLists rank_by_values(const Eigen::MatrixXd &psi, const Admissibility &admissible = {});

/// Pairs whose SINR is at or above floor_db. Without a floor every pair is admissible.
Admissibility admissible_pairs(const Eigen::MatrixXd &sinr, std::optional<double> floor_db);

/// Psi = R_{k,j}(beta0) with the evaluator's what-if convention.
PreferenceLists build_by_rate(const AssociationVector &beta0, const RateEvaluator &eval,
                              const Admissibility &admissible = {});
PreferenceLists build_by_rate(const RateTable &table, const Admissibility &admissible = {});

/// Psi = |sqrt(gain) H_{k,j}|_F.
PreferenceLists build_by_channel_norm(const ChannelSet &channels, const Admissibility &admissible = {});

struct CqiQuantizer
{
    double min_db = -6.0;
    double step_db = 2.0;
    int levels = 15;

    /// floor((sinr_db - min_db) / step_db) + 1 clamped to [1, levels].
    int operator()(double sinr_linear) const;
};

PreferenceLists build_by_cqi(const Eigen::MatrixXd &sinr, const CqiQuantizer &quantizer = {},
                             const Admissibility &admissible = {});

} // namespace uassoc
