// SPDX-License-Identifier: Apache-2.0

#include "uassoc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uassoc
{

namespace
{

// Zero-mean Laplacian draw whose standard deviation equals `spread`.
double laplacian(std::mt19937_64 &rng, double spread)
{
    if (spread <= 0.0)
        return 0.0;
    std::exponential_distribution<double> mag(std::numbers::sqrt2 / spread);
    std::bernoulli_distribution sign(0.5);
    const double v = mag(rng);
    return sign(rng) ? v : -v;
}

} // namespace

CMatrix ChannelRealization::composite() const
{
    return std::sqrt(large_scale_gain) * matrix;
}

CVector upa_response(double azimuth, double elevation, int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("UPA dimensions must be positive.");

    CVector a(rows * cols);
    const double u = std::sin(elevation) * std::cos(azimuth);
    const double v = std::sin(elevation) * std::sin(azimuth);
    for (int m = 0; m < rows; ++m)
        for (int n = 0; n < cols; ++n)
            a(m * cols + n) = std::polar(1.0, std::numbers::pi * (m * u + n * v));
    return a;
}

std::vector<double> cluster_gains(int clusters, double decay)
{
    if (clusters < 1)
        throw std::invalid_argument("Cluster count must be at least 1.");
    std::vector<double> g(clusters);
    double sum = 0.0;
    for (int c = 0; c < clusters; ++c)
    {
        g[c] = std::exp(-decay * (c + 1));
        sum += g[c];
    }
    for (auto &x : g)
        x *= clusters / sum;
    return g;
}

CMatrix clustered_channel(std::span<const Ray> rays, std::span<const double> gains, int rays_per_cluster,
                          ArrayShape ue, ArrayShape bs)
{
    if (rays_per_cluster < 1 || gains.empty() || rays.size() != gains.size() * rays_per_cluster)
        throw std::invalid_argument("Ray count must equal clusters x rays per cluster.");

    CMatrix h = CMatrix::Zero(ue.size(), bs.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
    {
        const auto &r = rays[i];
        const double amp = std::sqrt(gains[i / rays_per_cluster]);
        const CVector a_ue = upa_response(r.ue_azimuth, r.ue_elevation, ue.rows, ue.cols);
        const CVector a_bs = upa_response(r.bs_azimuth, r.bs_elevation, bs.rows, bs.cols);
        h.noalias() += (amp * std::polar(1.0, r.phase)) * a_ue * a_bs.adjoint();
    }
    return h / std::sqrt(static_cast<double>(rays.size()));
}

CMatrix gen_mmwave_channel(std::mt19937_64 &rng, const ClusterParams &params, ArrayShape ue, ArrayShape bs)
{
    if (params.clusters < 1 || params.rays < 1)
        throw std::invalid_argument("Cluster and ray counts must be at least 1.");

    const auto gains = cluster_gains(params.clusters, params.decay);
    std::uniform_real_distribution<double> azimuth(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> elevation(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    std::vector<Ray> rays;
    rays.reserve(static_cast<std::size_t>(params.clusters) * params.rays);
    for (int c = 0; c < params.clusters; ++c)
    {
        const double ue_az = azimuth(rng);
        const double ue_el = elevation(rng);
        const double bs_az = azimuth(rng);
        const double bs_el = elevation(rng);
        for (int l = 0; l < params.rays; ++l)
        {
            Ray r;
            r.ue_azimuth = ue_az + laplacian(rng, params.angle_spread_rad);
            r.ue_elevation = ue_el + laplacian(rng, params.angle_spread_rad);
            r.bs_azimuth = bs_az + laplacian(rng, params.angle_spread_rad);
            r.bs_elevation = bs_el + laplacian(rng, params.angle_spread_rad);
            r.phase = phase(rng);
            rays.push_back(r);
        }
    }
    return clustered_channel(rays, gains, params.rays, ue, bs);
}

CMatrix gen_sub6_channel(std::mt19937_64 &rng, int bs_antennas)
{
    if (bs_antennas < 1)
        throw std::invalid_argument("Antenna count must be at least 1.");
    // CN(0,1): real and imaginary parts each N(0, 1/2)
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    CMatrix h(1, bs_antennas);
    for (int m = 0; m < bs_antennas; ++m)
    {
        const double re = n(rng);
        const double im = n(rng);
        h(0, m) = {re, im};
    }
    return h;
}

double los_probability(double distance_m, Tier tier, const PathLossParams &params)
{
    if (tier == Tier::Sub6)
        return 1.0;
    return std::exp(-std::max(distance_m, 0.0) / params.los_distance_m);
}

double path_loss_db(double distance_m, double carrier_hz, Tier tier, bool los, const PathLossParams &params)
{
    const double d = std::max(distance_m, params.min_distance_m);
    double n = 0.0;
    if (tier == Tier::MmWave)
        n = los ? params.mmwave_los_exponent : params.mmwave_nlos_exponent;
    else
        n = los ? params.sub6_los_exponent : params.sub6_nlos_exponent;
    return params.intercept_db + 20.0 * std::log10(carrier_hz / 1e9) + 10.0 * n * std::log10(d);
}

LargeScale large_scale_gain(std::mt19937_64 &rng, double distance_m, double carrier_hz, Tier tier,
                            const PathLossParams &params)
{
    if (!(distance_m > 0.0))
        throw std::invalid_argument("Link distance must be positive.");
    std::bernoulli_distribution los_draw(los_probability(distance_m, tier, params));
    const bool los = los_draw(rng);
    return {std::pow(10.0, -path_loss_db(distance_m, carrier_hz, tier, los, params) / 10.0), los};
}

ChannelSet::ChannelSet(std::size_t num_ue, std::size_t num_bs)
    : num_ue_(num_ue), num_bs_(num_bs), links_(num_ue * num_bs)
{
}

ChannelSet generate_channels(const Topology &topo, const ChannelParams &params, std::mt19937_64 &rng)
{
    ChannelSet set(topo.num_ue(), topo.num_bs());
    for (std::size_t k = 0; k < topo.num_ue(); ++k)
    {
        const auto &ue = topo.ue(k);
        for (std::size_t j = 0; j < topo.num_bs(); ++j)
        {
            const auto &bs = topo.bs(j);
            auto &link = set.at(k, j);
            const double d = std::max(distance(ue.position, bs.position), params.path_loss.min_distance_m);
            const auto ls = large_scale_gain(rng, d, bs.carrier_hz, bs.tier, params.path_loss);
            link.large_scale_gain = ls.gain;
            link.los = ls.los;
            if (bs.tier == Tier::Sub6)
                link.matrix = gen_sub6_channel(rng, bs.antennas());
            else
                link.matrix = gen_mmwave_channel(rng, params.cluster, {ue.array_rows, ue.array_cols},
                                                 {bs.array_rows, bs.array_cols});
        }
    }
    return set;
}

} // namespace uassoc
