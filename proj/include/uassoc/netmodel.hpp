// SPDX-License-Identifier: Apache-2.0
//
// Two-tier HetNet scenario: base stations, user equipment, association vectors
// and the unique-association / load-balancing constraints.

#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace uassoc
{

/// Sentinel BS index for a UE that is not served by any BS.
inline constexpr int kUnassociated = -1;

enum class Tier
{
    Sub6,  // macro cell, microwave band
    MmWave // small cell, mmWave band
};

const char *to_string(Tier tier);

struct Position
{
    double x = 0.0;
    double y = 0.0;
};

double distance(const Position &a, const Position &b);

struct Area
{
    double width = 500.0;
    double height = 500.0;

    bool contains(const Position &p) const;
};

struct BaseStation
{
    Position position;
    Tier tier = Tier::MmWave;
    int array_rows = 8; // antenna layout; sub-6 arrays only use the element count
    int array_cols = 8;
    double tx_power_w = 1.0;
    double carrier_hz = 28e9;
    int quota = 5;

    int antennas() const { return array_rows * array_cols; }
};

struct UserEquipment
{
    Position position;
    int array_rows = 2; // mmWave array; the sub-6 module is a single antenna
    int array_cols = 2;
    int streams = 1;

    int mmwave_antennas() const { return array_rows * array_cols; }
};

/// Static scenario. Immutable after construction; the constructor enforces
/// positive quotas, 1 <= n_k <= N_k and that every node lies inside the area.
class Topology
{
  public:
    Topology(std::vector<BaseStation> base_stations, std::vector<UserEquipment> ues, Area area);

    std::size_t num_bs() const { return base_stations_.size(); }
    std::size_t num_ue() const { return ues_.size(); }
    const BaseStation &bs(std::size_t j) const { return base_stations_.at(j); }
    const UserEquipment &ue(std::size_t k) const { return ues_.at(k); }
    const std::vector<BaseStation> &base_stations() const { return base_stations_; }
    const std::vector<UserEquipment> &ues() const { return ues_; }
    const Area &area() const { return area_; }

    std::vector<int> quotas() const;
    int total_quota() const;

  private:
    std::vector<BaseStation> base_stations_;
    std::vector<UserEquipment> ues_;
    Area area_;
};

/// beta_k in {0..J-1} or kUnassociated for every UE k.
struct AssociationVector
{
    std::vector<int> serving;

    AssociationVector() = default;
    explicit AssociationVector(std::size_t num_ues) : serving(num_ues, kUnassociated) {}
    explicit AssociationVector(std::vector<int> values) : serving(std::move(values)) {}

    std::size_t size() const { return serving.size(); }
    int operator[](std::size_t k) const { return serving[k]; }
    int &operator[](std::size_t k) { return serving[k]; }
    bool associated(std::size_t k) const { return serving[k] != kUnassociated; }
    std::size_t num_associated() const;

    bool operator==(const AssociationVector &) const = default;
};

struct AssociationViolation
{
    enum class Kind
    {
        UnknownBs,   // beta_k names no BS (unique-association family)
        QuotaExceeded // |K_j| > q_j
    };

    Kind kind;
    int ue = kUnassociated; // set for UnknownBs
    int bs = kUnassociated;
    int load = 0;
    int quota = 0;

    std::string describe() const;
};

/// Checks the unique-association and load-balancing constraints. Returns the
/// first violation found (UEs in index order, then BSs in index order).
/// Throws std::invalid_argument when beta and the quota vector disagree on K.
std::optional<AssociationViolation> validate_association(const AssociationVector &beta,
                                                         const std::vector<int> &quotas);
std::optional<AssociationViolation> validate_association(const AssociationVector &beta,
                                                         const Topology &topo);

/// {k : beta_k = j}, ascending. Throws std::out_of_range when j >= num_bs.
std::vector<int> activation_set(const AssociationVector &beta, int j, std::size_t num_bs);

/// Per-BS activation sets in one pass.
std::vector<std::vector<int>> activation_sets(const AssociationVector &beta, std::size_t num_bs);

std::vector<int> unassociated(const AssociationVector &beta);

enum class LoadScenario
{
    Underload,
    CriticalLoad,
    Overload
};

const char *to_string(LoadScenario load);

LoadScenario classify_load(const std::vector<int> &quotas, std::size_t num_ues);
LoadScenario classify_load(const Topology &topo, std::size_t num_ues);

/// Parameters for drawing a scenario realization: one MCBS tier, one SCBS tier
/// and K UEs dropped uniformly over the area.
struct ScenarioParams
{
    Area area;
    std::size_t num_ues = 35;

    std::vector<Position> mcbs_positions;  // empty: one MCBS at the area center
    std::vector<Position> scbs_positions;  // empty: num_scbs on a ring around the center
    std::size_t num_scbs = 4;
    double scbs_ring_radius = 150.0;

    int mcbs_quota = 15;
    int scbs_quota = 5;
    int mcbs_array_rows = 8;
    int mcbs_array_cols = 8;
    int scbs_array_rows = 8;
    int scbs_array_cols = 8;
    int ue_array_rows = 2;
    int ue_array_cols = 2;
    int ue_streams = 1;
    double mcbs_power_dbm = 40.0;
    double scbs_power_dbm = 30.0;
    double mcbs_carrier_hz = 1.8e9;
    double scbs_carrier_hz = 28e9;
};

/// Default SCBS layout: n points evenly spaced on a circle, starting at 45 degrees.
std::vector<Position> ring_positions(const Area &area, std::size_t n, double radius);

/// MCBSs come first in BS index order, followed by SCBSs.
Topology make_topology(const ScenarioParams &params, std::mt19937_64 &rng);

double dbm_to_watts(double dbm);

} // namespace uassoc
