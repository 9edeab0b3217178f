// SPDX-License-Identifier: Apache-2.0
//
// Beamformers, effective channels and association-dependent rates.

#pragma once

#include "uassoc/channel.hpp"
#include "uassoc/netmodel.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace uassoc
{

/// Precoder F (M_j x n) and combiner W (N_k x n) for one UE-BS pair. On the
/// sub-6 tier n = 1 and W is the 1 x 1 identity.
struct Beamformer
{
    CMatrix precoder;
    CMatrix combiner;
};

class BeamformerSet
{
  public:
    BeamformerSet() = default;
    BeamformerSet(std::size_t num_ue, std::size_t num_bs) : num_bs_(num_bs), pairs_(num_ue * num_bs) {}

    Beamformer &at(std::size_t k, std::size_t j) { return pairs_.at(k * num_bs_ + j); }
    const Beamformer &at(std::size_t k, std::size_t j) const { return pairs_.at(k * num_bs_ + j); }

  private:
    std::size_t num_bs_ = 0;
    std::vector<Beamformer> pairs_;
};

/// SVD beamforming on mmWave links (top-n_k right / left singular vectors),
/// matched filter h^H / |h| on sub-6 links. A zero channel falls back to the
/// leading standard basis vectors.
Beamformer svd_beamformer(const CMatrix &h, int streams);
Beamformer matched_filter(const CMatrix &h);
BeamformerSet compute_beamformers(const Topology &topo, const ChannelSet &channels);

/// W_{k,j}^H Hc_{k,i} F_{l,i}: the channel from BS i's beam for UE l to UE k
/// listening with the combiner it uses towards BS j. Shape n_k x n_l.
/// Throws std::invalid_argument when the beamformers do not fit the channels.
CMatrix interfering_channel(std::size_t k, std::size_t serving, std::size_t i, std::size_t l,
                            const ChannelSet &channels, const BeamformerSet &beams);

/// W_{k,j}^H Hc_{k,j} F_{l,j}; l == k gives the direct effective channel.
CMatrix effective_channel(std::size_t k, std::size_t l, std::size_t j, const ChannelSet &channels,
                          const BeamformerSet &beams);

struct NoiseParams
{
    double psd_dbm_hz = -174.0;
    double noise_figure_db = 10.0;
    double sub6_bandwidth_hz = 20e6;
    double mmwave_bandwidth_hz = 100e6;
};

/// Noise power N0 in watts per tier.
struct NoiseModel
{
    double sub6_w = 0.0;
    double mmwave_w = 0.0;

    static NoiseModel from(const NoiseParams &p);
    double of(Tier tier) const { return tier == Tier::Sub6 ? sub6_w : mmwave_w; }
};

struct RateTable
{
    Eigen::MatrixXd rate; // K x J, bps/Hz
    Eigen::MatrixXd sinr; // K x J, linear
};

/// Evaluates rates and SINRs under an association vector. Effective-channel
/// Gram matrices are precomputed once, so each evaluation only sums over the
/// activation sets.
///
/// For a pair (k, j) with j != beta_k the evaluation is a what-if: UE k is
/// moved into BS j's activation set (sharing its power equally) and, when j
/// is already at quota, j's member with the lowest current rate is switched
/// into k's old slot.
class RateEvaluator
{
  public:
    RateEvaluator(const Topology &topo, const ChannelSet &channels, const BeamformerSet &beams, NoiseModel noise);

    const Topology &topology() const { return *topo_; }
    const ChannelSet &channels() const { return *channels_; }
    const BeamformerSet &beams() const { return *beams_; }
    const NoiseModel &noise() const { return noise_; }

    /// Activation sets used when evaluating (k, j) under beta.
    std::vector<std::vector<int>> hypothetical_sets(int k, int j, const AssociationVector &beta) const;

    /// R_{k,j} for explicit activation sets; k must be a member of sets[j].
    /// Throws std::runtime_error if the interference-plus-noise covariance is
    /// not positive definite.
    double rate_for_sets(int k, int j, const std::vector<std::vector<int>> &sets) const;
    double sinr_for_sets(int k, int j, const std::vector<std::vector<int>> &sets) const;

    double rate(int k, int j, const AssociationVector &beta) const;
    double sinr(int k, int j, const AssociationVector &beta) const;

    /// R_{k, beta_k} for every UE, 0 for unassociated ones.
    std::vector<double> served_rates(const AssociationVector &beta) const;

    /// Sum-rate utility U(r(beta)).
    double utility(const AssociationVector &beta) const;

    RateTable table(const AssociationVector &beta) const;

  private:
    int streams(int k, int j) const;
    std::size_t gram_offset(int k, int j, int i, int l) const;
    const cdouble *gram(int k, int j, int i, int l) const { return grams_.data() + gram_offset(k, j, i, l); }
    const cdouble *noise_gram(int k, int j) const;

    std::vector<std::vector<int>> hypothetical_sets(int k, int j, const AssociationVector &beta,
                                                    const std::vector<double> &served) const;
    void covariance(int k, int j, const std::vector<std::vector<int>> &sets, Eigen::MatrixXcd &v,
                    Eigen::MatrixXcd &s) const;
    // (interference plus noise, signal) for single-stream links
    std::pair<double, double> scalar_terms(int k, int j, const std::vector<std::vector<int>> &sets) const;

    const Topology *topo_;
    const ChannelSet *channels_;
    const BeamformerSet *beams_;
    NoiseModel noise_;
    int num_ue_;
    int num_bs_;
    std::vector<std::size_t> ue_offset_; // start of UE k's block in grams_
    std::vector<cdouble> grams_;         // G G^H, G = W_{k,j}^H Hc_{k,i} F_{l,i}
    std::vector<std::size_t> noise_offset_;
    std::vector<cdouble> noise_grams_; // W_{k,j}^H W_{k,j}
};

/// Free-function forms of the evaluator queries.
double instantaneous_rate(int k, int j, const AssociationVector &beta, const RateEvaluator &eval);
double received_sinr(int k, int j, const AssociationVector &beta, const RateEvaluator &eval);
double sum_rate_utility(const AssociationVector &beta, const RateEvaluator &eval);

} // namespace uassoc
