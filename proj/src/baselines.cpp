// SPDX-License-Identifier: Apache-2.0

#include "uassoc/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace uassoc
{

namespace
{

// Keeps at most q_j targets per BS, preferring higher score then lower index.
AssociationVector enforce_quotas(const std::vector<int> &target, const std::vector<double> &score,
                                 const std::vector<int> &quotas)
{
    AssociationVector beta(target.size());
    std::vector<std::vector<int>> applicants(quotas.size());
    for (std::size_t k = 0; k < target.size(); ++k)
        applicants[target[k]].push_back(static_cast<int>(k));
    for (std::size_t j = 0; j < quotas.size(); ++j)
    {
        auto &a = applicants[j];
        std::stable_sort(a.begin(), a.end(), [&](int x, int y) { return score[x] > score[y]; });
        const std::size_t keep = std::min<std::size_t>(a.size(), quotas[j]);
        for (std::size_t p = 0; p < keep; ++p)
            beta[a[p]] = static_cast<int>(j);
    }
    return beta;
}

} // namespace

AssociationVector max_sinr_association(const Eigen::MatrixXd &sinr, const std::vector<int> &quotas)
{
    if (static_cast<std::size_t>(sinr.cols()) != quotas.size())
        throw std::invalid_argument("SINR table width does not match the quota vector.");
    const auto K = static_cast<std::size_t>(sinr.rows());
    if (quotas.empty())
        return AssociationVector(K);

    std::vector<int> target(K);
    std::vector<double> score(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        Eigen::Index j = 0;
        score[k] = sinr.row(k).maxCoeff(&j);
        target[k] = static_cast<int>(j);
    }
    return enforce_quotas(target, score, quotas);
}

AssociationVector random_association(std::mt19937_64 &rng, std::size_t num_bs, std::size_t num_ues,
                                     const std::vector<int> &quotas)
{
    if (quotas.size() != num_bs)
        throw std::invalid_argument("Quota vector length does not match the number of BSs.");
    if (num_bs == 0)
        return AssociationVector(num_ues);

    std::uniform_int_distribution<int> pick(0, static_cast<int>(num_bs) - 1);
    std::vector<int> target(num_ues);
    for (auto &t : target)
        t = pick(rng);
    return enforce_quotas(target, std::vector<double>(num_ues, 0.0), quotas);
}

SwapResult centralized_swap(const RateEvaluator &eval, const AssociationVector &initial, int max_sweeps,
                            int max_chain)
{
    const auto quotas = eval.topology().quotas();
    const int J = static_cast<int>(quotas.size());
    const int K = static_cast<int>(initial.size());
    if (validate_association(initial, quotas))
        throw std::invalid_argument("Initial association violates the association constraints.");
    if (max_chain < 1)
        max_chain = J;

    SwapResult out{initial, eval.utility(initial), 0};
    while (out.moves < max_sweeps)
    {
        const auto rates = eval.served_rates(out.beta);
        std::vector<int> order(K);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rates[a] < rates[b]; });
        const auto sets = activation_sets(out.beta, J);
        std::vector<int> load(J);
        std::vector<int> weakest(J, kUnassociated); // lowest rate, larger index on ties
        for (int j = 0; j < J; ++j)
        {
            load[j] = static_cast<int>(sets[j].size());
            for (int l : sets[j])
                if (weakest[j] == kUnassociated || rates[l] <= rates[weakest[j]])
                    weakest[j] = l;
        }

        AssociationVector best = out.beta;
        double best_u = out.utility;
        AssociationVector cand = out.beta;
        std::vector<bool> visited(J, false);
        auto consider = [&] {
            const double u = eval.utility(cand);
            if (u > best_u)
            {
                best_u = u;
                best = cand;
            }
        };

        // Places the displaced UE w: unassociated, a BS with room, or a full
        // unvisited BS whose weakest member is displaced in turn.
        auto place = [&](auto &&self, int w, int depth) -> void {
            for (int dest = -1; dest < J; ++dest)
            {
                if (dest != kUnassociated && visited[dest])
                    continue;
                cand[w] = dest;
                if (dest == kUnassociated || load[dest] < quotas[dest])
                    consider();
                else if (depth < max_chain)
                {
                    const int y = weakest[dest];
                    visited[dest] = true;
                    self(self, y, depth + 1);
                    visited[dest] = false;
                    cand[y] = dest;
                }
            }
            cand[w] = out.beta[w];
        };

        for (int k : order)
        {
            const int from = out.beta[k];
            if (from != kUnassociated)
                --load[from];
            for (int to = -1; to < J; ++to)
            {
                if (to == from)
                    continue;
                cand[k] = to;
                if (to == kUnassociated || load[to] < quotas[to])
                {
                    consider();
                    continue;
                }
                // any member of the target may make way for the mover
                visited[to] = true;
                for (int w : sets[to])
                {
                    place(place, w, 1);
                    cand[w] = to;
                }
                visited[to] = false;
            }
            cand[k] = from;
            if (from != kUnassociated)
                ++load[from];
        }

        // strict improvement with a relative guard against rounding cycles
        if (!(best_u > out.utility * (1.0 + 1e-12)))
            break;
        out.beta = std::move(best);
        out.utility = best_u;
        ++out.moves;
    }
    return out;
}

} // namespace uassoc
