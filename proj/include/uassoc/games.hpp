// SPDX-License-Identifier: Apache-2.0
//
// Distributed matching games for user association, executed as synchronous
// application/response rounds:
//
//   DA         deferred acceptance. BSs hold waiting lists; every association
//              is final only when the rejection set empties.
//   EA-Base    early acceptance. A BS accepts an applicant immediately iff the
//              applicant is in the top q_j of its original list and quota
//              remains; rejected UEs move on and never reapply.
//   EA-PLU     EA-Base with preference-list updating: associated UEs leave all
//              BS lists, quotas shrink, full BSs broadcast and leave UE lists.
//   EA-PLU-RA  EA-PLU with cyclic reapplication over the updated UE list.
//
// All UEs in the rejection set apply in the same round. A BS handles one
// round's applicants as a batch, in order of its preference (then index).

#pragma once

#include "uassoc/netmodel.hpp"
#include "uassoc/prefs.hpp"

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace uassoc
{

struct GameInput
{
    std::vector<std::vector<int>> ue_prefs; // BS indices, most preferred first
    std::vector<std::vector<int>> bs_prefs; // UE indices, most preferred first
    std::vector<int> quotas;

    static GameInput from(const PreferenceLists &prefs, std::vector<int> quotas);

    std::size_t num_ues() const { return ue_prefs.size(); }
    std::size_t num_bss() const { return bs_prefs.size(); }

    /// Throws std::invalid_argument on out-of-range or duplicate entries,
    /// non-positive quotas, or a pair listed on one side only.
    void validate() const;
};

enum class MessageType
{
    Application,
    Accept,
    Reject,
    Waitlist,       // DA only
    QuotaExhausted  // EA-PLU / EA-PLU-RA broadcast; ue is kUnassociated
};

const char *to_string(MessageType type);

struct Message
{
    MessageType type;
    int ue;
    int bs;

    bool operator==(const Message &) const = default;
};

struct GameTrace
{
    std::vector<std::vector<Message>> rounds;       // rounds[n - 1] holds iteration n
    std::vector<int> applications;                  // N_appl_k
    std::vector<std::optional<int>> association_round; // iteration at which k's association became final
    int iterations = 0;                             // N_iter

    /// One line per message: iteration, type, ue, bs (tab-separated).
    /// Iterations are shifted by iteration_offset.
    void write_event_log(std::ostream &os, int iteration_offset = 0) const;
};

struct GameResult
{
    AssociationVector beta;
    std::vector<int> unassociated;
    GameTrace trace;
};

enum class GameKind
{
    DeferredAcceptance,
    EaBase,
    EaPlu,
    EaPluRa
};

const char *to_string(GameKind kind);
std::optional<GameKind> parse_game_kind(std::string_view name);
bool is_early_acceptance(GameKind kind);

GameResult run_da(const GameInput &input);
GameResult run_ea_base(const GameInput &input);
GameResult run_ea_plu(const GameInput &input);
GameResult run_ea_plu_ra(const GameInput &input);
GameResult run_game(GameKind kind, const GameInput &input);

struct StabilityReport
{
    bool stable = true;
    std::optional<std::pair<int, int>> blocking_pair; // (ue, bs)
};

/// Searches for a blocking pair: UE k and BS j that list each other, k
/// prefers j to beta_k (or is unassociated) and j has spare quota or prefers
/// k to one of its current UEs. UEs are scanned in index order and each UE's
/// candidates in its preference order.
StabilityReport is_stable(const AssociationVector &beta, const GameInput &input);

} // namespace uassoc
