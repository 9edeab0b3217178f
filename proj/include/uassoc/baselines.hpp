// SPDX-License-Identifier: Apache-2.0
//
// Reference association schemes: max-SINR, uniform random and a centralized
// greedy swap hill-climb used as an upper-bound benchmark.

#pragma once

#include "uassoc/beamrate.hpp"
#include "uassoc/netmodel.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace uassoc
{

/// Each UE picks its highest-SINR BS (lowest index on ties). A BS keeps the
/// q_j applicants with the highest SINR (lower UE index on ties) and drops
/// the rest.
AssociationVector max_sinr_association(const Eigen::MatrixXd &sinr, const std::vector<int> &quotas);

/// Each UE draws a BS uniformly; overflow is dropped in UE index order.
AssociationVector random_association(std::mt19937_64 &rng, std::size_t num_bs, std::size_t num_ues,
                                     const std::vector<int> &quotas);

struct SwapResult
{
    AssociationVector beta;
    double utility = 0.0;
    int moves = 0;
};

/// Steepest-ascent hill-climb on U(r(beta)) from `initial`. A move takes
/// one UE k to another BS or to unassociated. If the target is full, one of
/// its members is displaced and placed in turn: unassociated, into a BS with
/// room (including the one k left), or into a full BS not yet on the chain,
/// whose lowest-rate member is displaced next. Chains displace at most
/// max_chain UEs (J when max_chain < 1).
///
/// Each step scans UEs worst rate first (unassociated UEs count as rate 0)
/// and commits the best move found; equal gains keep the earlier move. Stops
/// when no move improves U or after max_sweeps committed moves.
SwapResult centralized_swap(const RateEvaluator &eval, const AssociationVector &initial, int max_sweeps,
                            int max_chain = 0);

} // namespace uassoc
