// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "uassoc/netmodel.hpp"

#include <stdexcept>
#include <cmath>

using namespace uassoc;

namespace
{

Topology small_topology(std::vector<int> quotas, std::size_t num_ues)
{
    std::vector<BaseStation> bss;
    for (int q : quotas)
    {
        BaseStation b;
        b.position = {100.0, 100.0};
        b.quota = q;
        bss.push_back(b);
    }
    std::vector<UserEquipment> ues(num_ues);
    for (auto &u : ues)
        u.position = {10.0, 10.0};
    return Topology(std::move(bss), std::move(ues), Area{});
}

} // namespace

TEST_CASE("validate_association accepts loads within quota")
{
    CHECK_FALSE(validate_association(AssociationVector({0, 0, 1}), std::vector<int>{2, 1}));
    CHECK_FALSE(validate_association(AssociationVector({kUnassociated, kUnassociated}), std::vector<int>{1}));
}

TEST_CASE("validate_association reports the overloaded BS")
{
    const auto v = validate_association(AssociationVector({0, 0, 0}), std::vector<int>{2, 1});
    REQUIRE(v);
    CHECK(v->kind == AssociationViolation::Kind::QuotaExceeded);
    CHECK(v->bs == 0);
    CHECK(v->load == 3);
    CHECK(v->describe() == "BS 0 load 3 > quota 2");
}

TEST_CASE("validate_association rejects unknown BS indices")
{
    const auto v = validate_association(AssociationVector({0, 5}), std::vector<int>{1, 1});
    REQUIRE(v);
    CHECK(v->kind == AssociationViolation::Kind::UnknownBs);
    CHECK(v->ue == 1);
    CHECK(v->bs == 5);
}

TEST_CASE("validate_association checks the length against the topology")
{
    const auto topo = small_topology({1, 1}, 3);
    CHECK_THROWS_AS(validate_association(AssociationVector(2), topo), std::invalid_argument);
    CHECK_FALSE(validate_association(AssociationVector({0, 1, kUnassociated}), topo));
}

TEST_CASE("activation sets and unassociated UEs")
{
    const AssociationVector beta({1, kUnassociated, 1, 0});
    CHECK(activation_set(beta, 1, 2) == std::vector<int>{0, 2});
    CHECK(activation_set(beta, 0, 2) == std::vector<int>{3});
    CHECK_THROWS_AS(activation_set(beta, 2, 2), std::out_of_range);
    CHECK(unassociated(beta) == std::vector<int>{1});
    CHECK(beta.num_associated() == 3);
    const auto sets = activation_sets(beta, 2);
    CHECK(sets[0] == std::vector<int>{3});
    CHECK(sets[1] == std::vector<int>{0, 2});
}

TEST_CASE("load scenario classification")
{
    const std::vector<int> q{15, 5, 5, 5, 5};
    CHECK(classify_load(q, 28) == LoadScenario::Underload);
    CHECK(classify_load(q, 35) == LoadScenario::CriticalLoad);
    CHECK(classify_load(q, 42) == LoadScenario::Overload);
}

TEST_CASE("topology constructor enforces its invariants")
{
    CHECK_THROWS_AS(small_topology({0}, 1), std::invalid_argument);

    std::vector<BaseStation> bss(1);
    bss[0].position = {600.0, 10.0};
    CHECK_THROWS_AS(Topology(bss, {}, Area{}), std::invalid_argument);

    std::vector<BaseStation> ok(1);
    std::vector<UserEquipment> ues(1);
    ues[0].streams = 5;
    CHECK_THROWS_AS(Topology(ok, ues, Area{}), std::invalid_argument);
}

TEST_CASE("make_topology default layout")
{
    ScenarioParams p;
    std::mt19937_64 rng(3);
    const auto topo = make_topology(p, rng);
    REQUIRE(topo.num_bs() == 5);
    CHECK(topo.num_ue() == 35);
    CHECK(topo.quotas() == std::vector<int>{15, 5, 5, 5, 5});
    CHECK(topo.total_quota() == 35);
    CHECK(topo.bs(0).tier == Tier::Sub6);
    CHECK(topo.bs(0).position.x == doctest::Approx(250.0));
    for (std::size_t j = 1; j < 5; ++j)
    {
        CHECK(topo.bs(j).tier == Tier::MmWave);
        CHECK(distance(topo.bs(j).position, topo.bs(0).position) == doctest::Approx(150.0));
        CHECK(topo.bs(j).antennas() == 64);
    }
    for (const auto &u : topo.ues())
        CHECK(topo.area().contains(u.position));
    CHECK(topo.bs(0).tx_power_w == doctest::Approx(10.0));
    CHECK(topo.bs(1).tx_power_w == doctest::Approx(1.0));
}

TEST_CASE("make_topology is reproducible for a fixed seed")
{
    ScenarioParams p;
    std::mt19937_64 a(11), b(11);
    const auto ta = make_topology(p, a);
    const auto tb = make_topology(p, b);
    for (std::size_t k = 0; k < ta.num_ue(); ++k)
    {
        CHECK(ta.ue(k).position.x == tb.ue(k).position.x);
        CHECK(ta.ue(k).position.y == tb.ue(k).position.y);
    }
}

TEST_CASE("dbm_to_watts")
{
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(40.0) == doctest::Approx(10.0));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
}
