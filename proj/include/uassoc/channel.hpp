// SPDX-License-Identifier: Apache-2.0
//
// Channel realizations for every UE-BS pair: i.i.d. Rayleigh vectors on the
// sub-6 GHz tier and a clustered UPA model on the mmWave tier, scaled by a
// distance-dependent large-scale gain with a LoS/NLoS draw.

#pragma once

#include "uassoc/netmodel.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <span>
#include <vector>

namespace uassoc
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct ChannelRealization
{
    CMatrix matrix;                // N_k x M_j (mmWave) or 1 x M_j (sub-6), small-scale only
    double large_scale_gain = 1.0; // linear power gain, > 0
    bool los = true;

    /// sqrt(gain) * H, the channel that rates and norms are computed on.
    CMatrix composite() const;
};

struct ClusterParams
{
    int clusters = 5;
    int rays = 10;
    double angle_spread_rad = 5.0 * 3.14159265358979323846 / 180.0;
    double decay = 0.5; // gamma_c proportional to exp(-decay * c)
};

struct PathLossParams
{
    double intercept_db = 32.4; // PL = intercept + 20 log10(f_GHz) + 10 n log10(d_m)
    double mmwave_los_exponent = 2.0;
    double mmwave_nlos_exponent = 3.2;
    double sub6_los_exponent = 2.0;
    double sub6_nlos_exponent = 3.5;
    double los_distance_m = 150.0; // p_LoS(d) = exp(-d / los_distance_m) on the mmWave tier
    double min_distance_m = 1.0;   // distances are clamped from below
};

struct ChannelParams
{
    ClusterParams cluster;
    PathLossParams path_loss;
};

/// One propagation path of the clustered model: AoA/ZoA at the UE, AoD/ZoD at
/// the BS (radians) and a common phase rotation.
struct Ray
{
    double ue_azimuth = 0.0;
    double ue_elevation = 0.0;
    double bs_azimuth = 0.0;
    double bs_elevation = 0.0;
    double phase = 0.0;
};

/// UPA response with half-wavelength spacing. Element (m, n), stored at
/// m * cols + n, has phase pi * (m sin(el) cos(az) + n sin(el) sin(az)).
CVector upa_response(double azimuth, double elevation, int rows, int cols);

/// Cluster power gains exp(-decay * c), c = 1..C, normalized to sum to C.
std::vector<double> cluster_gains(int clusters, double decay);

struct ArrayShape
{
    int rows = 1;
    int cols = 1;
    int size() const { return rows * cols; }
};

/// H = 1/sqrt(CL) sum_c sum_l sqrt(gamma_c) e^{j phase} a_UE a_BS^H. Rays are
/// stored cluster-major, so ray i belongs to cluster i / rays_per_cluster.
CMatrix clustered_channel(std::span<const Ray> rays, std::span<const double> gains, int rays_per_cluster,
                          ArrayShape ue, ArrayShape bs);

/// Draws cluster angles, Laplacian ray offsets and ray phases, then builds H.
CMatrix gen_mmwave_channel(std::mt19937_64 &rng, const ClusterParams &params, ArrayShape ue, ArrayShape bs);

/// 1 x M row vector with i.i.d. CN(0, 1) entries.
CMatrix gen_sub6_channel(std::mt19937_64 &rng, int bs_antennas);

struct LargeScale
{
    double gain = 1.0;
    bool los = true;
};

double los_probability(double distance_m, Tier tier, const PathLossParams &params);
double path_loss_db(double distance_m, double carrier_hz, Tier tier, bool los, const PathLossParams &params);
LargeScale large_scale_gain(std::mt19937_64 &rng, double distance_m, double carrier_hz, Tier tier,
                            const PathLossParams &params);

/// Realizations for all K x J pairs, indexed (k, j).
class ChannelSet
{
  public:
    ChannelSet() = default;
    ChannelSet(std::size_t num_ue, std::size_t num_bs);

    std::size_t num_ue() const { return num_ue_; }
    std::size_t num_bs() const { return num_bs_; }

    ChannelRealization &at(std::size_t k, std::size_t j) { return links_.at(k * num_bs_ + j); }
    const ChannelRealization &at(std::size_t k, std::size_t j) const { return links_.at(k * num_bs_ + j); }

  private:
    std::size_t num_ue_ = 0;
    std::size_t num_bs_ = 0;
    std::vector<ChannelRealization> links_;
};

/// Pairs are drawn in (k, j) order from a single stream, so the result is a
/// deterministic function of the RNG state.
ChannelSet generate_channels(const Topology &topo, const ChannelParams &params, std::mt19937_64 &rng);

} // namespace uassoc
