// SPDX-License-Identifier: Apache-2.0

#include "uassoc/beamrate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uassoc
{

namespace
{

CMatrix basis_columns(Eigen::Index rows, Eigen::Index cols)
{
    return CMatrix::Identity(rows, cols);
}

// log2 det of a Hermitian positive-definite matrix.
double log2_det_hpd(const Eigen::MatrixXcd &a)
{
    Eigen::LLT<Eigen::MatrixXcd> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("Interference-plus-noise covariance is not positive definite.");
    double acc = 0.0;
    const auto &l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i)
        acc += std::log2(l(i, i).real());
    return 2.0 * acc;
}

double rate_from_covariance(const Eigen::MatrixXcd &v, const Eigen::MatrixXcd &s)
{
    if (v.rows() == 1)
    {
        const double vv = v(0, 0).real();
        if (!(vv > 0.0))
            throw std::runtime_error("Interference-plus-noise power is not positive.");
        return std::log2(1.0 + s(0, 0).real() / vv);
    }
    return std::max(0.0, log2_det_hpd(v + s) - log2_det_hpd(v));
}

} // namespace

Beamformer svd_beamformer(const CMatrix &h, int streams)
{
    if (streams < 1 || streams > std::min(h.rows(), h.cols()))
        throw std::invalid_argument("Stream count exceeds the channel rank bound.");

    Beamformer bf;
    if (h.squaredNorm() == 0.0)
    {
        bf.precoder = basis_columns(h.cols(), streams);
        bf.combiner = basis_columns(h.rows(), streams);
        return bf;
    }
    Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    bf.precoder = svd.matrixV().leftCols(streams);
    bf.combiner = svd.matrixU().leftCols(streams);
    return bf;
}

Beamformer matched_filter(const CMatrix &h)
{
    if (h.rows() != 1)
        throw std::invalid_argument("Matched filter expects a 1 x M channel.");
    Beamformer bf;
    bf.combiner = CMatrix::Identity(1, 1);
    const double norm = h.norm();
    if (norm == 0.0)
        bf.precoder = basis_columns(h.cols(), 1);
    else
        bf.precoder = h.adjoint() / norm;
    return bf;
}

BeamformerSet compute_beamformers(const Topology &topo, const ChannelSet &channels)
{
    if (channels.num_ue() != topo.num_ue() || channels.num_bs() != topo.num_bs())
        throw std::invalid_argument("Channel set does not match the topology.");

    BeamformerSet beams(topo.num_ue(), topo.num_bs());
    for (std::size_t k = 0; k < topo.num_ue(); ++k)
        for (std::size_t j = 0; j < topo.num_bs(); ++j)
        {
            const auto &h = channels.at(k, j).matrix;
            if (topo.bs(j).tier == Tier::Sub6)
                beams.at(k, j) = matched_filter(h);
            else
                beams.at(k, j) = svd_beamformer(h, topo.ue(k).streams);
        }
    return beams;
}

CMatrix interfering_channel(std::size_t k, std::size_t serving, std::size_t i, std::size_t l,
                            const ChannelSet &channels, const BeamformerSet &beams)
{
    const auto &w = beams.at(k, serving).combiner;
    const CMatrix h = channels.at(k, i).composite();
    const auto &f = beams.at(l, i).precoder;
    if (w.rows() != h.rows() || h.cols() != f.rows())
        throw std::invalid_argument("Beamformer dimensions do not match the channel (tier mismatch).");
    return w.adjoint() * h * f;
}

CMatrix effective_channel(std::size_t k, std::size_t l, std::size_t j, const ChannelSet &channels,
                          const BeamformerSet &beams)
{
    return interfering_channel(k, j, j, l, channels, beams);
}

NoiseModel NoiseModel::from(const NoiseParams &p)
{
    auto watts = [&](double bw) { return dbm_to_watts(p.psd_dbm_hz + 10.0 * std::log10(bw) + p.noise_figure_db); };
    return {watts(p.sub6_bandwidth_hz), watts(p.mmwave_bandwidth_hz)};
}

RateEvaluator::RateEvaluator(const Topology &topo, const ChannelSet &channels, const BeamformerSet &beams,
                             NoiseModel noise)
    : topo_(&topo), channels_(&channels), beams_(&beams), noise_(noise),
      num_ue_(static_cast<int>(topo.num_ue())), num_bs_(static_cast<int>(topo.num_bs()))
{
    if (channels.num_ue() != topo.num_ue() || channels.num_bs() != topo.num_bs())
        throw std::invalid_argument("Channel set does not match the topology.");

    const std::size_t J = num_bs_, K = num_ue_;
    ue_offset_.resize(K + 1, 0);
    noise_offset_.resize(K + 1, 0);
    for (std::size_t k = 0; k < K; ++k)
    {
        const std::size_t n2 = static_cast<std::size_t>(topo.ue(k).streams) * topo.ue(k).streams;
        ue_offset_[k + 1] = ue_offset_[k] + J * J * K * n2;
        noise_offset_[k + 1] = noise_offset_[k] + J * n2;
    }
    grams_.assign(ue_offset_[K], cdouble{0.0, 0.0});
    noise_grams_.assign(noise_offset_[K], cdouble{0.0, 0.0});

    for (int k = 0; k < num_ue_; ++k)
        for (int j = 0; j < num_bs_; ++j)
        {
            const int n = streams(k, j);
            const auto &w = beams.at(k, j).combiner;
            Eigen::Map<Eigen::MatrixXcd>(noise_grams_.data() + noise_offset_[k] +
                                             static_cast<std::size_t>(j) * topo.ue(k).streams * topo.ue(k).streams,
                                         n, n) = w.adjoint() * w;

            for (int i = 0; i < num_bs_; ++i)
            {
                if (topo.bs(i).tier != topo.bs(j).tier)
                    continue;
                const CMatrix wh = w.adjoint() * channels.at(k, i).composite();
                for (int l = 0; l < num_ue_; ++l)
                {
                    const CMatrix g = wh * beams.at(l, i).precoder;
                    Eigen::Map<Eigen::MatrixXcd>(grams_.data() + gram_offset(k, j, i, l), n, n) = g * g.adjoint();
                }
            }
        }
}

int RateEvaluator::streams(int k, int j) const
{
    return topo_->bs(j).tier == Tier::Sub6 ? 1 : topo_->ue(k).streams;
}

std::size_t RateEvaluator::gram_offset(int k, int j, int i, int l) const
{
    const std::size_t n2 = static_cast<std::size_t>(topo_->ue(k).streams) * topo_->ue(k).streams;
    return ue_offset_[k] + ((static_cast<std::size_t>(j) * num_bs_ + i) * num_ue_ + l) * n2;
}

const cdouble *RateEvaluator::noise_gram(int k, int j) const
{
    const std::size_t n2 = static_cast<std::size_t>(topo_->ue(k).streams) * topo_->ue(k).streams;
    return noise_grams_.data() + noise_offset_[k] + static_cast<std::size_t>(j) * n2;
}

void RateEvaluator::covariance(int k, int j, const std::vector<std::vector<int>> &sets, Eigen::MatrixXcd &v,
                               Eigen::MatrixXcd &s) const
{
    const int n = streams(k, j);
    using CMap = Eigen::Map<const Eigen::MatrixXcd>;

    const auto &own = sets.at(j);
    if (own.empty())
        throw std::invalid_argument("UE is not a member of the serving BS activation set.");

    v = noise_.of(topo_->bs(j).tier) * CMap(noise_gram(k, j), n, n);
    const double p_own = topo_->bs(j).tx_power_w / static_cast<double>(own.size());
    s = p_own * CMap(gram(k, j, j, k), n, n);

    for (int i = 0; i < num_bs_; ++i)
    {
        if (topo_->bs(i).tier != topo_->bs(j).tier || sets[i].empty())
            continue;
        const double p = topo_->bs(i).tx_power_w / static_cast<double>(sets[i].size());
        for (int l : sets[i])
        {
            if (i == j && l == k)
                continue;
            v += p * CMap(gram(k, j, i, l), n, n);
        }
    }
}

std::pair<double, double> RateEvaluator::scalar_terms(int k, int j, const std::vector<std::vector<int>> &sets) const
{
    const auto &own = sets.at(j);
    if (own.empty())
        throw std::invalid_argument("UE is not a member of the serving BS activation set.");

    double v = noise_.of(topo_->bs(j).tier) * noise_gram(k, j)->real();
    const double s = topo_->bs(j).tx_power_w / static_cast<double>(own.size()) * gram(k, j, j, k)->real();
    for (int i = 0; i < num_bs_; ++i)
    {
        if (topo_->bs(i).tier != topo_->bs(j).tier || sets[i].empty())
            continue;
        const double p = topo_->bs(i).tx_power_w / static_cast<double>(sets[i].size());
        double acc = 0.0;
        for (int l : sets[i])
            if (i != j || l != k)
                acc += gram(k, j, i, l)->real();
        v += p * acc;
    }
    return {v, s};
}

double RateEvaluator::rate_for_sets(int k, int j, const std::vector<std::vector<int>> &sets) const
{
    if (streams(k, j) == 1)
    {
        const auto [v, s] = scalar_terms(k, j, sets);
        if (!(v > 0.0))
            throw std::runtime_error("Interference-plus-noise power is not positive.");
        return std::log2(1.0 + s / v);
    }
    Eigen::MatrixXcd v, s;
    covariance(k, j, sets, v, s);
    return rate_from_covariance(v, s);
}

double RateEvaluator::sinr_for_sets(int k, int j, const std::vector<std::vector<int>> &sets) const
{
    if (streams(k, j) == 1)
    {
        const auto [v, s] = scalar_terms(k, j, sets);
        return s / v;
    }
    Eigen::MatrixXcd v, s;
    covariance(k, j, sets, v, s);
    return s.trace().real() / v.trace().real();
}

std::vector<double> RateEvaluator::served_rates(const AssociationVector &beta) const
{
    if (beta.size() != static_cast<std::size_t>(num_ue_))
        throw std::invalid_argument("Association vector length does not match the topology.");
    const auto sets = activation_sets(beta, num_bs_);
    std::vector<double> r(num_ue_, 0.0);
    for (int k = 0; k < num_ue_; ++k)
        if (beta.associated(k))
            r[k] = rate_for_sets(k, beta[k], sets);
    return r;
}

std::vector<std::vector<int>> RateEvaluator::hypothetical_sets(int k, int j, const AssociationVector &beta,
                                                               const std::vector<double> &served) const
{
    auto sets = activation_sets(beta, num_bs_);
    const int from = beta[k];
    if (from == j)
        return sets;

    if (from != kUnassociated)
        std::erase(sets[from], k);

    auto &target = sets[j];
    if (static_cast<int>(target.size()) >= topo_->bs(j).quota)
    {
        // weakest member by current rate; ties go to the larger index
        int weakest = target.front();
        for (int l : target)
            if (served[l] <= served[weakest])
                weakest = l;
        std::erase(target, weakest);
        if (from != kUnassociated)
        {
            auto &dst = sets[from];
            dst.insert(std::upper_bound(dst.begin(), dst.end(), weakest), weakest);
        }
    }
    target.insert(std::upper_bound(target.begin(), target.end(), k), k);
    return sets;
}

std::vector<std::vector<int>> RateEvaluator::hypothetical_sets(int k, int j, const AssociationVector &beta) const
{
    if (k < 0 || k >= num_ue_ || j < 0 || j >= num_bs_)
        throw std::out_of_range("UE or BS index out of range.");
    const bool needs_rates = beta[k] != j && static_cast<int>(activation_set(beta, j, num_bs_).size()) >=
                                                 topo_->bs(j).quota;
    const std::vector<double> served = needs_rates ? served_rates(beta) : std::vector<double>(num_ue_, 0.0);
    return hypothetical_sets(k, j, beta, served);
}

double RateEvaluator::rate(int k, int j, const AssociationVector &beta) const
{
    return rate_for_sets(k, j, hypothetical_sets(k, j, beta));
}

double RateEvaluator::sinr(int k, int j, const AssociationVector &beta) const
{
    return sinr_for_sets(k, j, hypothetical_sets(k, j, beta));
}

double RateEvaluator::utility(const AssociationVector &beta) const
{
    double u = 0.0;
    for (double r : served_rates(beta))
        u += r;
    return u;
}

RateTable RateEvaluator::table(const AssociationVector &beta) const
{
    const auto served = served_rates(beta);
    RateTable t{Eigen::MatrixXd::Zero(num_ue_, num_bs_), Eigen::MatrixXd::Zero(num_ue_, num_bs_)};
    for (int k = 0; k < num_ue_; ++k)
        for (int j = 0; j < num_bs_; ++j)
        {
            const auto sets = hypothetical_sets(k, j, beta, served);
            t.sinr(k, j) = sinr_for_sets(k, j, sets);
            t.rate(k, j) = rate_for_sets(k, j, sets);
        }
    return t;
}

double instantaneous_rate(int k, int j, const AssociationVector &beta, const RateEvaluator &eval)
{
    return eval.rate(k, j, beta);
}

double received_sinr(int k, int j, const AssociationVector &beta, const RateEvaluator &eval)
{
    return eval.sinr(k, j, beta);
}

double sum_rate_utility(const AssociationVector &beta, const RateEvaluator &eval)
{
    return eval.utility(beta);
}

} // namespace uassoc
