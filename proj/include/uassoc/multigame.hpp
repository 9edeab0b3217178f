// SPDX-License-Identifier: Apache-2.0
//
// Repeated matching games. Round 0 plays on channel-norm lists; every later
// round rebuilds both sides' lists from the rates under the previous round's
// association and plays again. The best association seen is returned.

#pragma once

#include "uassoc/beamrate.hpp"
#include "uassoc/games.hpp"
#include "uassoc/prefs.hpp"

#include <vector>

namespace uassoc
{

struct MultiGameConfig
{
    int rounds = 10; // N
    GameKind inner_game = GameKind::EaPluRa;
    bool early_exit = false; // stop once an association repeats the previous one

    void validate() const;
};

struct TrackerState
{
    AssociationVector best_beta;
    double best_utility = 0.0;
    int best_round = 0;           // 1-based, 0 before the first update
    std::vector<double> history;  // U(r(beta^n)) for n = 1..N
};

/// Appends utility to the history and replaces the best association only on
/// strict improvement, so ties keep the earlier round.
TrackerState tracker_update(TrackerState state, const AssociationVector &beta, double utility);

struct MultiGameResult
{
    AssociationVector beta; // best association
    TrackerState tracker;
    std::vector<GameResult> games; // one per round played
};

/// The admissibility mask applies to every round's lists.
MultiGameResult run_multigame(const MultiGameConfig &cfg, const RateEvaluator &eval,
                              const Admissibility &admissible = {});

} // namespace uassoc
