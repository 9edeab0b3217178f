// SPDX-License-Identifier: Apache-2.0

#include "uassoc/multigame.hpp"

#include <stdexcept>

namespace uassoc
{

void MultiGameConfig::validate() const
{
    if (rounds < 1)
        throw std::invalid_argument("Multi-game round count must be at least 1.");
}

TrackerState tracker_update(TrackerState state, const AssociationVector &beta, double utility)
{
    state.history.push_back(utility);
    if (state.best_round == 0 || utility > state.best_utility)
    {
        state.best_beta = beta;
        state.best_utility = utility;
        state.best_round = static_cast<int>(state.history.size());
    }
    return state;
}

MultiGameResult run_multigame(const MultiGameConfig &cfg, const RateEvaluator &eval, const Admissibility &admissible)
{
    cfg.validate();
    const auto quotas = eval.topology().quotas();

    MultiGameResult out;
    auto prefs = build_by_channel_norm(eval.channels(), admissible);
    for (int n = 1; n <= cfg.rounds; ++n)
    {
        out.games.push_back(run_game(cfg.inner_game, GameInput::from(prefs, quotas)));
        const auto &beta = out.games.back().beta;
        out.tracker = tracker_update(std::move(out.tracker), beta, eval.utility(beta));

        if (cfg.early_exit && n > 1 && beta == out.games[out.games.size() - 2].beta)
            break;
        // Lists for the next round; beta^{N+1} itself never enters the argmax.
        if (n < cfg.rounds)
            prefs = build_by_rate(beta, eval, admissible);
    }
    out.beta = out.tracker.best_beta;
    return out;
}

} // namespace uassoc
