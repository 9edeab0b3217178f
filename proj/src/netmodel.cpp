// SPDX-License-Identifier: Apache-2.0

#include "uassoc/netmodel.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace uassoc
{

const char *to_string(Tier tier)
{
    return tier == Tier::Sub6 ? "sub6" : "mmwave";
}

double distance(const Position &a, const Position &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool Area::contains(const Position &p) const
{
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height;
}

Topology::Topology(std::vector<BaseStation> base_stations, std::vector<UserEquipment> ues, Area area)
    : base_stations_(std::move(base_stations)), ues_(std::move(ues)), area_(area)
{
    if (area_.width <= 0.0 || area_.height <= 0.0)
        throw std::invalid_argument("Area dimensions must be positive.");

    for (std::size_t j = 0; j < base_stations_.size(); ++j)
    {
        const auto &b = base_stations_[j];
        if (b.quota < 1)
            throw std::invalid_argument("BS " + std::to_string(j) + ": quota must be at least 1.");
        if (b.array_rows < 1 || b.array_cols < 1)
            throw std::invalid_argument("BS " + std::to_string(j) + ": antenna array must be non-empty.");
        if (b.tx_power_w <= 0.0 || b.carrier_hz <= 0.0)
            throw std::invalid_argument("BS " + std::to_string(j) + ": power and carrier must be positive.");
        if (!area_.contains(b.position))
            throw std::invalid_argument("BS " + std::to_string(j) + " lies outside the area.");
    }
    for (std::size_t k = 0; k < ues_.size(); ++k)
    {
        const auto &u = ues_[k];
        if (u.array_rows < 1 || u.array_cols < 1)
            throw std::invalid_argument("UE " + std::to_string(k) + ": antenna array must be non-empty.");
        if (u.streams < 1 || u.streams > u.mmwave_antennas())
            throw std::invalid_argument("UE " + std::to_string(k) + ": stream count must lie in [1, N_k].");
        if (!area_.contains(u.position))
            throw std::invalid_argument("UE " + std::to_string(k) + " lies outside the area.");
    }
}

std::vector<int> Topology::quotas() const
{
    std::vector<int> q;
    q.reserve(base_stations_.size());
    for (const auto &b : base_stations_)
        q.push_back(b.quota);
    return q;
}

int Topology::total_quota() const
{
    const auto q = quotas();
    return std::accumulate(q.begin(), q.end(), 0);
}

std::size_t AssociationVector::num_associated() const
{
    std::size_t n = 0;
    for (int b : serving)
        n += (b != kUnassociated);
    return n;
}

std::string AssociationViolation::describe() const
{
    std::ostringstream os;
    if (kind == Kind::UnknownBs)
        os << "UE " << ue << " is associated with unknown BS " << bs;
    else
        os << "BS " << bs << " load " << load << " > quota " << quota;
    return os.str();
}

std::optional<AssociationViolation> validate_association(const AssociationVector &beta,
                                                         const std::vector<int> &quotas)
{
    const int num_bs = static_cast<int>(quotas.size());
    std::vector<int> load(quotas.size(), 0);

    for (std::size_t k = 0; k < beta.size(); ++k)
    {
        const int b = beta[k];
        if (b == kUnassociated)
            continue;
        if (b < 0 || b >= num_bs)
            return AssociationViolation{AssociationViolation::Kind::UnknownBs, static_cast<int>(k), b, 0, 0};
        ++load[b];
    }
    for (int j = 0; j < num_bs; ++j)
        if (load[j] > quotas[j])
            return AssociationViolation{AssociationViolation::Kind::QuotaExceeded, kUnassociated, j, load[j],
                                        quotas[j]};
    return std::nullopt;
}

std::optional<AssociationViolation> validate_association(const AssociationVector &beta, const Topology &topo)
{
    if (beta.size() != topo.num_ue())
        throw std::invalid_argument("Association vector has " + std::to_string(beta.size()) +
                                    " entries but the topology has " + std::to_string(topo.num_ue()) + " UEs.");
    return validate_association(beta, topo.quotas());
}

std::vector<int> activation_set(const AssociationVector &beta, int j, std::size_t num_bs)
{
    if (j < 0 || static_cast<std::size_t>(j) >= num_bs)
        throw std::out_of_range("BS index " + std::to_string(j) + " out of range.");
    std::vector<int> set;
    for (std::size_t k = 0; k < beta.size(); ++k)
        if (beta[k] == j)
            set.push_back(static_cast<int>(k));
    return set;
}

std::vector<std::vector<int>> activation_sets(const AssociationVector &beta, std::size_t num_bs)
{
    std::vector<std::vector<int>> sets(num_bs);
    for (std::size_t k = 0; k < beta.size(); ++k)
    {
        const int b = beta[k];
        if (b == kUnassociated)
            continue;
        if (b < 0 || static_cast<std::size_t>(b) >= num_bs)
            throw std::out_of_range("Association vector names unknown BS " + std::to_string(b) + ".");
        sets[b].push_back(static_cast<int>(k));
    }
    return sets;
}

std::vector<int> unassociated(const AssociationVector &beta)
{
    std::vector<int> u;
    for (std::size_t k = 0; k < beta.size(); ++k)
        if (!beta.associated(k))
            u.push_back(static_cast<int>(k));
    return u;
}

const char *to_string(LoadScenario load)
{
    switch (load)
    {
    case LoadScenario::Underload:
        return "underload";
    case LoadScenario::CriticalLoad:
        return "critical";
    case LoadScenario::Overload:
        return "overload";
    }
    return "?";
}

LoadScenario classify_load(const std::vector<int> &quotas, std::size_t num_ues)
{
    const long total = std::accumulate(quotas.begin(), quotas.end(), 0L);
    const long k = static_cast<long>(num_ues);
    if (k < total)
        return LoadScenario::Underload;
    if (k == total)
        return LoadScenario::CriticalLoad;
    return LoadScenario::Overload;
}

LoadScenario classify_load(const Topology &topo, std::size_t num_ues)
{
    return classify_load(topo.quotas(), num_ues);
}

std::vector<Position> ring_positions(const Area &area, std::size_t n, double radius)
{
    std::vector<Position> pos;
    const Position c{area.width / 2.0, area.height / 2.0};
    for (std::size_t i = 0; i < n; ++i)
    {
        const double a = std::numbers::pi / 4.0 + 2.0 * std::numbers::pi * double(i) / double(n);
        pos.push_back({c.x + radius * std::cos(a), c.y + radius * std::sin(a)});
    }
    return pos;
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

Topology make_topology(const ScenarioParams &params, std::mt19937_64 &rng)
{
    std::vector<BaseStation> bss;

    auto macro = params.mcbs_positions;
    if (macro.empty())
        macro.push_back({params.area.width / 2.0, params.area.height / 2.0});
    for (const auto &p : macro)
        bss.push_back({p, Tier::Sub6, params.mcbs_array_rows, params.mcbs_array_cols,
                       dbm_to_watts(params.mcbs_power_dbm), params.mcbs_carrier_hz, params.mcbs_quota});

    auto small = params.scbs_positions;
    if (small.empty())
        small = ring_positions(params.area, params.num_scbs, params.scbs_ring_radius);
    for (const auto &p : small)
        bss.push_back({p, Tier::MmWave, params.scbs_array_rows, params.scbs_array_cols,
                       dbm_to_watts(params.scbs_power_dbm), params.scbs_carrier_hz, params.scbs_quota});

    std::uniform_real_distribution<double> ux(0.0, params.area.width);
    std::uniform_real_distribution<double> uy(0.0, params.area.height);
    std::vector<UserEquipment> ues;
    ues.reserve(params.num_ues);
    for (std::size_t k = 0; k < params.num_ues; ++k)
    {
        const double x = ux(rng);
        const double y = uy(rng);
        ues.push_back({{x, y}, params.ue_array_rows, params.ue_array_cols, params.ue_streams});
    }
    return Topology(std::move(bss), std::move(ues), params.area);
}

} // namespace uassoc
