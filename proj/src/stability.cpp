// SPDX-License-Identifier: Apache-2.0

#include "uassoc/games.hpp"

#include <limits>
#include <stdexcept>

namespace uassoc
{

StabilityReport is_stable(const AssociationVector &beta, const GameInput &input)
{
    input.validate();
    const std::size_t K = input.num_ues();
    const std::size_t J = input.num_bss();
    if (beta.size() != K)
        throw std::invalid_argument("Association vector length does not match the number of UEs.");

    constexpr int kAbsent = std::numeric_limits<int>::max();
    std::vector<std::vector<int>> rank(J, std::vector<int>(K, kAbsent));
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t p = 0; p < input.bs_prefs[j].size(); ++p)
            rank[j][input.bs_prefs[j][p]] = static_cast<int>(p);

    std::vector<int> load(J, 0);
    std::vector<int> worst(J, -1); // lowest-ranked current member of each BS
    for (std::size_t k = 0; k < K; ++k)
    {
        const int j = beta[k];
        if (j == kUnassociated)
            continue;
        if (j < 0 || static_cast<std::size_t>(j) >= J)
            throw std::invalid_argument("Association vector refers to an unknown BS.");
        ++load[j];
        if (worst[j] < 0 || rank[j][k] > rank[j][worst[j]])
            worst[j] = static_cast<int>(k);
    }

    for (std::size_t k = 0; k < K; ++k)
        for (int j : input.ue_prefs[k])
        {
            if (j == beta[k])
                break;
            const bool spare = load[j] < input.quotas[j];
            const bool displaces = worst[j] >= 0 && rank[j][k] < rank[j][worst[j]];
            if (spare || displaces)
                return {false, std::pair{static_cast<int>(k), j}};
        }
    return {};
}

} // namespace uassoc
