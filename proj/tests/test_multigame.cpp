// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <stdexcept>

#include "support.hpp"
#include "uassoc/multigame.hpp"

using namespace uassoc;

TEST_CASE("tracker keeps the first best association")
{
    TrackerState s;
    const AssociationVector a(std::vector<int>{0}), b(std::vector<int>{1}), c(std::vector<int>{kUnassociated});
    s = tracker_update(s, a, 5.0);
    CHECK(s.best_beta == a);
    CHECK(s.best_round == 1);
    s = tracker_update(s, b, 3.0);
    CHECK(s.best_beta == a);
    CHECK(s.history == std::vector<double>{5.0, 3.0});
    s = tracker_update(s, c, 5.0);
    CHECK(s.best_beta == a);
    s = tracker_update(s, b, 7.0);
    CHECK(s.best_beta == b);
    CHECK(s.best_utility == 7.0);
    CHECK(s.best_round == 4);
}

TEST_CASE("one round equals a single norm-based game")
{
    const auto sc = testing::make_scenario(3, 8, 2, {3, 3});
    const auto eval = sc.evaluator();
    MultiGameConfig cfg;
    cfg.rounds = 1;
    cfg.inner_game = GameKind::DeferredAcceptance;
    const auto r = run_multigame(cfg, eval);
    const auto single = run_da(GameInput::from(build_by_channel_norm(sc.channels), sc.topo.quotas()));
    CHECK(r.beta == single.beta);
    CHECK(r.tracker.history.size() == 1);
    CHECK(r.tracker.best_utility == doctest::Approx(eval.utility(single.beta)));
}

TEST_CASE("history has one entry per round and the best is its maximum")
{
    const auto sc = testing::make_scenario(4, 10, 3, {4, 2});
    const auto eval = sc.evaluator();
    for (auto kind : {GameKind::DeferredAcceptance, GameKind::EaPluRa})
    {
        MultiGameConfig cfg;
        cfg.rounds = 6;
        cfg.inner_game = kind;
        const auto r = run_multigame(cfg, eval);
        REQUIRE(r.tracker.history.size() == 6);
        CHECK(r.games.size() == 6);
        const double mx = *std::max_element(r.tracker.history.begin(), r.tracker.history.end());
        CHECK(r.tracker.best_utility == mx);
        CHECK(eval.utility(r.beta) == doctest::Approx(mx));
        for (std::size_t n = 0; n < 6; ++n)
            CHECK(r.tracker.history[n] == doctest::Approx(eval.utility(r.games[n].beta)));
    }
}

TEST_CASE("later rounds play on rate lists built from the previous association")
{
    const auto sc = testing::make_scenario(6, 9, 2, {3, 3});
    const auto eval = sc.evaluator();
    MultiGameConfig cfg;
    cfg.rounds = 3;
    cfg.inner_game = GameKind::EaPluRa;
    const auto r = run_multigame(cfg, eval);
    const auto quotas = sc.topo.quotas();
    for (int n = 1; n < 3; ++n)
    {
        const auto prefs = build_by_rate(r.games[n - 1].beta, eval);
        CHECK(run_ea_plu_ra(GameInput::from(prefs, quotas)).beta == r.games[n].beta);
    }
}

TEST_CASE("best utility is nondecreasing in the round count")
{
    const auto sc = testing::make_scenario(8, 12, 4, {5, 2});
    const auto eval = sc.evaluator();
    double prev = -1.0;
    for (int n = 1; n <= 5; ++n)
    {
        MultiGameConfig cfg;
        cfg.rounds = n;
        const double u = run_multigame(cfg, eval).tracker.best_utility;
        CHECK(u >= prev);
        prev = u;
    }
}

TEST_CASE("early exit stops on a repeated association")
{
    const auto sc = testing::make_scenario(9, 6, 2, {3, 3});
    const auto eval = sc.evaluator();
    MultiGameConfig cfg;
    cfg.rounds = 30;
    cfg.early_exit = true;
    const auto r = run_multigame(cfg, eval);
    CHECK(r.games.size() <= 30u);
    if (r.games.size() < 30u)
        CHECK(r.games.back().beta == r.games[r.games.size() - 2].beta);

    MultiGameConfig bad;
    bad.rounds = 0;
    CHECK_THROWS_AS(run_multigame(bad, eval), std::invalid_argument);
}
