// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures and independent reference implementations for the unit
// tests and the acceptance binary.

#pragma once

#include "uassoc/baselines.hpp"
#include "uassoc/beamrate.hpp"
#include "uassoc/channel.hpp"
#include "uassoc/games.hpp"
#include "uassoc/netmodel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <vector>

namespace uassoc::testing
{

/// Two UEs (alpha = 0, beta = 1), two BSs (A = 0, B = 1), quota 1 each. The
/// metric values give both sides the same rankings.
inline Eigen::MatrixXd table_two_metrics()
{
    Eigen::MatrixXd m(2, 2);
    m << 4, 3, 3, 1;
    return m;
}

inline GameInput table_one()
{
    return GameInput{{{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}, {1, 1}};
}

/// Random instance with full lists on both sides.
inline GameInput random_full_instance(std::mt19937_64 &rng, int J, int K, std::vector<int> quotas)
{
    GameInput in;
    in.quotas = std::move(quotas);
    in.ue_prefs.resize(K);
    in.bs_prefs.resize(J);
    for (auto &l : in.ue_prefs)
    {
        l.resize(J);
        std::iota(l.begin(), l.end(), 0);
        std::shuffle(l.begin(), l.end(), rng);
    }
    for (auto &l : in.bs_prefs)
    {
        l.resize(K);
        std::iota(l.begin(), l.end(), 0);
        std::shuffle(l.begin(), l.end(), rng);
    }
    return in;
}

/// Random instance where each pair is mutually acceptable with probability p.
inline GameInput random_partial_instance(std::mt19937_64 &rng, int J, int K, double p)
{
    std::bernoulli_distribution keep(p);
    std::uniform_int_distribution<int> quota(1, 3);
    auto in = random_full_instance(rng, J, K, {});
    for (int j = 0; j < J; ++j)
        in.quotas.push_back(quota(rng));
    std::vector<std::vector<bool>> ok(K, std::vector<bool>(J));
    for (auto &row : ok)
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = keep(rng);
    for (int k = 0; k < K; ++k)
        std::erase_if(in.ue_prefs[k], [&](int j) { return !ok[k][j]; });
    for (int j = 0; j < J; ++j)
        std::erase_if(in.bs_prefs[j], [&](int k) { return !ok[k][j]; });
    return in;
}

/// Random quotas summing to `total` with every quota at least 1.
inline std::vector<int> random_quotas(std::mt19937_64 &rng, int J, int total)
{
    std::vector<int> q(J, 1);
    std::uniform_int_distribution<int> pick(0, J - 1);
    for (int r = J; r < total; ++r)
        ++q[pick(rng)];
    return q;
}

/// Queue-based UE-proposing deferred acceptance: one proposal at a time.
inline std::vector<int> textbook_deferred_acceptance(const GameInput &in)
{
    const int K = static_cast<int>(in.num_ues());
    const int J = static_cast<int>(in.num_bss());
    std::vector<std::vector<int>> rank(J, std::vector<int>(K, -1));
    for (int j = 0; j < J; ++j)
        for (std::size_t p = 0; p < in.bs_prefs[j].size(); ++p)
            rank[j][in.bs_prefs[j][p]] = static_cast<int>(p);

    std::vector<int> next(K, 0), match(K, -1);
    std::vector<std::vector<int>> held(J);
    std::deque<int> free;
    for (int k = 0; k < K; ++k)
        free.push_back(k);
    while (!free.empty())
    {
        const int k = free.front();
        free.pop_front();
        if (next[k] >= static_cast<int>(in.ue_prefs[k].size()))
            continue;
        const int j = in.ue_prefs[k][next[k]++];
        if (rank[j][k] < 0)
        {
            free.push_back(k);
            continue;
        }
        held[j].push_back(k);
        match[k] = j;
        if (static_cast<int>(held[j].size()) > in.quotas[j])
        {
            auto worst = std::max_element(held[j].begin(), held[j].end(),
                                          [&](int a, int b) { return rank[j][a] < rank[j][b]; });
            match[*worst] = -1;
            free.push_back(*worst);
            held[j].erase(worst);
        }
    }
    return match;
}

/// Sum of the metric over matched pairs.
inline double matching_value(const Eigen::MatrixXd &metric, const std::vector<int> &beta)
{
    double v = 0.0;
    for (std::size_t k = 0; k < beta.size(); ++k)
        if (beta[k] >= 0)
            v += metric(static_cast<Eigen::Index>(k), beta[k]);
    return v;
}

/// Small randomly drawn scenario with all derived objects.
struct Scenario
{
    Topology topo;
    ChannelSet channels;
    BeamformerSet beams;
    NoiseModel noise;

    RateEvaluator evaluator() const { return RateEvaluator(topo, channels, beams, noise); }
};

inline Scenario make_scenario(std::uint64_t seed, std::size_t num_ues, std::size_t num_scbs,
                              std::vector<int> quotas = {}, int ue_streams = 1, int ue_rows = 2, int ue_cols = 2)
{
    ScenarioParams p;
    p.num_ues = num_ues;
    p.num_scbs = num_scbs;
    p.ue_streams = ue_streams;
    p.ue_array_rows = ue_rows;
    p.ue_array_cols = ue_cols;
    p.mcbs_array_rows = 2;
    p.mcbs_array_cols = 4;
    p.scbs_array_rows = 4;
    p.scbs_array_cols = 4;
    if (!quotas.empty())
    {
        p.mcbs_quota = quotas.front();
        p.scbs_quota = quotas.size() > 1 ? quotas[1] : quotas.front();
    }
    std::mt19937_64 rng(seed);
    auto topo = make_topology(p, rng);
    auto channels = generate_channels(topo, ChannelParams{}, rng);
    auto beams = compute_beamformers(topo, channels);
    return Scenario{std::move(topo), std::move(channels), std::move(beams), NoiseModel::from(NoiseParams{})};
}

/// Two mmWave SCBSs with quota 1 each, K UEs dropped uniformly.
inline Scenario make_scbs_pair(std::uint64_t seed, std::size_t num_ues)
{
    std::mt19937_64 rng(seed);
    const Area area;
    std::vector<BaseStation> bss(2);
    bss[0].position = {175.0, 250.0};
    bss[1].position = {325.0, 250.0};
    for (auto &b : bss)
    {
        b.array_rows = 4;
        b.array_cols = 4;
        b.quota = 1;
    }
    std::uniform_real_distribution<double> u(0.0, 500.0);
    std::vector<UserEquipment> ues(num_ues);
    for (auto &ue : ues)
    {
        const double x = u(rng);
        ue.position = {x, u(rng)};
    }
    Topology topo(std::move(bss), std::move(ues), area);
    auto channels = generate_channels(topo, ChannelParams{}, rng);
    auto beams = compute_beamformers(topo, channels);
    return Scenario{std::move(topo), std::move(channels), std::move(beams), NoiseModel::from(NoiseParams{})};
}

/// Direct evaluation of the rate of UE k on BS j for explicit activation
/// sets: every interference term is formed from the raw channel, precoder and
/// combiner, and the rate from a determinant.
inline double term_by_term_rate(const Scenario &sc, int k, int j, const std::vector<std::vector<int>> &sets)
{
    const auto &W = sc.beams.at(k, j).combiner;
    const auto tier = sc.topo.bs(j).tier;
    const Eigen::Index n = W.cols();

    Eigen::MatrixXcd V = sc.noise.of(tier) * (W.adjoint() * W);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < sets.size(); ++i)
    {
        if (sc.topo.bs(i).tier != tier)
            continue;
        const Eigen::MatrixXcd H = std::sqrt(sc.channels.at(k, i).large_scale_gain) * sc.channels.at(k, i).matrix;
        const double p = sc.topo.bs(i).tx_power_w / static_cast<double>(sets[i].size());
        for (int l : sets[i])
        {
            const Eigen::MatrixXcd G = W.adjoint() * H * sc.beams.at(l, i).precoder;
            const Eigen::MatrixXcd term = p * G * G.adjoint();
            if (static_cast<int>(i) == j && l == k)
                S += term;
            else
                V += term;
        }
    }
    const Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n) + V.inverse() * S;
    return std::log2(M.determinant().real());
}

/// Every association vector satisfying the quotas; out-of-quota BSs never appear.
inline std::vector<AssociationVector> enumerate_associations(std::size_t K, const std::vector<int> &quotas)
{
    const int J = static_cast<int>(quotas.size());
    std::vector<AssociationVector> out;
    std::vector<int> beta(K, kUnassociated);
    auto rec = [&](auto &&self, std::size_t k) -> void {
        if (k == K)
        {
            AssociationVector b(beta);
            if (!validate_association(b, quotas))
                out.push_back(std::move(b));
            return;
        }
        for (int j = -1; j < J; ++j)
        {
            beta[k] = j;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    return out;
}

inline double brute_force_optimum(const RateEvaluator &eval)
{
    double best = 0.0;
    for (const auto &b : enumerate_associations(eval.topology().num_ue(), eval.topology().quotas()))
        best = std::max(best, eval.utility(b));
    return best;
}

} // namespace uassoc::testing
