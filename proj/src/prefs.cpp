// SPDX-License-Identifier: Apache-2.0

#include "uassoc/prefs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uassoc
{

namespace
{

void sort_list(std::vector<RankedEntry> &list)
{
    std::sort(list.begin(), list.end(), [](const RankedEntry &a, const RankedEntry &b) {
        if (a.value != b.value)
            return a.value > b.value;
        return a.index < b.index;
    });
}

std::vector<std::vector<int>> indices(const std::vector<std::vector<RankedEntry>> &lists)
{
    std::vector<std::vector<int>> out(lists.size());
    for (std::size_t i = 0; i < lists.size(); ++i)
        for (const auto &e : lists[i])
            out[i].push_back(e.index);
    return out;
}

} // namespace

std::vector<std::vector<int>> PreferenceLists::ue_order() const
{
    return indices(ue_lists);
}

std::vector<std::vector<int>> PreferenceLists::bs_order() const
{
    return indices(bs_lists);
}

std::optional<PreferenceMethod> parse_preference_method(std::string_view name)
{
    if (name == "rate")
        return PreferenceMethod::Rate;
    if (name == "norm")
        return PreferenceMethod::ChannelNorm;
    if (name == "cqi")
        return PreferenceMethod::Cqi;
    return std::nullopt;
}

const char *to_string(PreferenceMethod method)
{
    switch (method)
    {
    case PreferenceMethod::Rate:
        return "rate";
    case PreferenceMethod::ChannelNorm:
        return "norm";
    case PreferenceMethod::Cqi:
        return "cqi";
    }
    return "?";
}

PreferenceLists rank_by_values(const Eigen::MatrixXd &psi, const Admissibility &admissible)
{
    const auto K = static_cast<std::size_t>(psi.rows());
    const auto J = static_cast<std::size_t>(psi.cols());
    if (!admissible.empty() && (admissible.size() != K || (K > 0 && admissible[0].size() != J)))
        throw std::invalid_argument("Admissibility mask does not match the value table.");

    PreferenceLists p;
    p.ue_lists.resize(K);
    p.bs_lists.resize(J);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t j = 0; j < J; ++j)
        {
            if (!admissible.empty() && !admissible[k][j])
                continue;
            const double v = psi(k, j);
            p.ue_lists[k].push_back({static_cast<int>(j), v});
            p.bs_lists[j].push_back({static_cast<int>(k), v});
        }
    for (auto &l : p.ue_lists)
        sort_list(l);
    for (auto &l : p.bs_lists)
        sort_list(l);
    return p;
}

Admissibility admissible_pairs(const Eigen::MatrixXd &sinr, std::optional<double> floor_db)
{
    Admissibility mask(sinr.rows(), std::vector<bool>(sinr.cols(), true));
    if (!floor_db)
        return mask;
    const double floor_lin = std::pow(10.0, *floor_db / 10.0);
    for (Eigen::Index k = 0; k < sinr.rows(); ++k)
        for (Eigen::Index j = 0; j < sinr.cols(); ++j)
            mask[k][j] = sinr(k, j) >= floor_lin;
    return mask;
}

PreferenceLists build_by_rate(const RateTable &table, const Admissibility &admissible)
{
    return rank_by_values(table.rate, admissible);
}

PreferenceLists build_by_rate(const AssociationVector &beta0, const RateEvaluator &eval,
                              const Admissibility &admissible)
{
    return build_by_rate(eval.table(beta0), admissible);
}

PreferenceLists build_by_channel_norm(const ChannelSet &channels, const Admissibility &admissible)
{
    Eigen::MatrixXd psi(channels.num_ue(), channels.num_bs());
    for (std::size_t k = 0; k < channels.num_ue(); ++k)
        for (std::size_t j = 0; j < channels.num_bs(); ++j)
        {
            const auto &link = channels.at(k, j);
            psi(k, j) = std::sqrt(link.large_scale_gain) * link.matrix.norm();
        }
    return rank_by_values(psi, admissible);
}

int CqiQuantizer::operator()(double sinr_linear) const
{
    if (!(sinr_linear > 0.0))
        return 1;
    const double db = 10.0 * std::log10(sinr_linear);
    const double level = std::floor((db - min_db) / step_db) + 1.0;
    return static_cast<int>(std::clamp(level, 1.0, static_cast<double>(levels)));
}

PreferenceLists build_by_cqi(const Eigen::MatrixXd &sinr, const CqiQuantizer &quantizer,
                             const Admissibility &admissible)
{
    Eigen::MatrixXd psi(sinr.rows(), sinr.cols());
    for (Eigen::Index k = 0; k < sinr.rows(); ++k)
        for (Eigen::Index j = 0; j < sinr.cols(); ++j)
            psi(k, j) = quantizer(sinr(k, j));
    return rank_by_values(psi, admissible);
}

} // namespace uassoc
