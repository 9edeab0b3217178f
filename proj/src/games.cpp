// SPDX-License-Identifier: Apache-2.0

#include "uassoc/games.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace uassoc
{

namespace
{

constexpr int kNotListed = std::numeric_limits<int>::max();

// rank[j][k]: position of UE k in BS j's list, kNotListed if absent.
std::vector<std::vector<int>> bs_ranks(const GameInput &in)
{
    std::vector<std::vector<int>> rank(in.num_bss(), std::vector<int>(in.num_ues(), kNotListed));
    for (std::size_t j = 0; j < in.num_bss(); ++j)
        for (std::size_t p = 0; p < in.bs_prefs[j].size(); ++p)
            rank[j][in.bs_prefs[j][p]] = static_cast<int>(p);
    return rank;
}

// Book-keeping shared by every game.
struct Ledger
{
    explicit Ledger(std::size_t num_ues) : result{AssociationVector(num_ues), {}, {}}
    {
        result.trace.applications.assign(num_ues, 0);
        result.trace.association_round.assign(num_ues, std::nullopt);
    }

    std::vector<Message> &begin_round()
    {
        ++result.trace.iterations;
        return result.trace.rounds.emplace_back();
    }

    int round() const { return result.trace.iterations; }

    void apply(std::vector<Message> &log, int ue, int bs)
    {
        ++result.trace.applications[ue];
        log.push_back({MessageType::Application, ue, bs});
    }

    void accept(std::vector<Message> &log, int ue, int bs)
    {
        result.beta[ue] = bs;
        result.trace.association_round[ue] = round();
        log.push_back({MessageType::Accept, ue, bs});
    }

    GameResult finish()
    {
        result.unassociated = uassoc::unassociated(result.beta);
        return std::move(result);
    }

    GameResult result;
};

// Applicants of one BS in batch order: BS preference rank, then UE index.
void order_batch(std::vector<int> &applicants, const std::vector<int> &rank)
{
    std::sort(applicants.begin(), applicants.end(), [&](int a, int b) {
        if (rank[a] != rank[b])
            return rank[a] < rank[b];
        return a < b;
    });
}

// Initial rejection set: UEs with an empty list never apply.
std::vector<int> initial_rejection_set(const GameInput &in)
{
    std::vector<int> r;
    for (std::size_t k = 0; k < in.num_ues(); ++k)
        if (!in.ue_prefs[k].empty())
            r.push_back(static_cast<int>(k));
    return r;
}

// State of the EA-PLU family: live BS lists and quotas, and each UE's view of
// which BSs are still open.
struct UpdatingLists
{
    explicit UpdatingLists(const GameInput &in)
        : bs_lists(in.bs_prefs), quota(in.quotas), open(in.num_bss(), true)
    {
    }

    int position(int bs, int ue) const
    {
        const auto &l = bs_lists[bs];
        const auto it = std::find(l.begin(), l.end(), ue);
        return it == l.end() ? kNotListed : static_cast<int>(it - l.begin());
    }

    // Alg. 2 acceptance test: k is within the first q_j entries of the updated list.
    bool admits(int bs, int ue) const { return quota[bs] > 0 && position(bs, ue) < quota[bs]; }

    std::vector<std::vector<int>> bs_lists;
    std::vector<int> quota;
    std::vector<bool> open; // false once the BS has broadcast that its quota is exhausted
};

// Runs the batch for one BS under EA-PLU rules; returns the accepted UEs.
std::vector<int> ea_plu_batch(UpdatingLists &state, int bs, std::vector<int> applicants, Ledger &ledger,
                              std::vector<Message> &log, std::vector<int> &rejected)
{
    std::vector<int> rank(ledger.result.beta.size(), kNotListed);
    for (int k : applicants)
        rank[k] = state.position(bs, k);
    order_batch(applicants, rank);

    std::vector<int> accepted;
    for (int k : applicants)
    {
        if (state.admits(bs, k))
        {
            ledger.accept(log, k, bs);
            accepted.push_back(k);
            --state.quota[bs];
            std::erase(state.bs_lists[bs], k);
        }
        else
        {
            log.push_back({MessageType::Reject, k, bs});
            rejected.push_back(k);
        }
    }
    return accepted;
}

// End-of-round updates: associated UEs leave every BS list, exhausted BSs
// broadcast and close.
void ea_plu_end_round(UpdatingLists &state, const std::vector<int> &accepted, std::vector<Message> &log)
{
    for (int k : accepted)
        for (auto &l : state.bs_lists)
            std::erase(l, k);
    for (std::size_t j = 0; j < state.quota.size(); ++j)
        if (state.open[j] && state.quota[j] == 0)
        {
            state.open[j] = false;
            log.push_back({MessageType::QuotaExhausted, kUnassociated, static_cast<int>(j)});
        }
}

GameResult run_ea_updating(const GameInput &input, bool reapply)
{
    input.validate();
    const std::size_t K = input.num_ues();
    const std::size_t J = input.num_bss();

    Ledger ledger(K);
    UpdatingLists state(input);

    // Without reapplication m_k walks the original list once, skipping closed
    // BSs. With reapplication the next target is the first open BS after the
    // last one applied to, wrapping to the start of the updated list.
    std::vector<int> cursor(K, 0);      // EA-PLU: index into the original list
    std::vector<int> last_applied(K, -1); // EA-PLU-RA: original-list position of the last target

    auto next_target = [&](int k) -> int {
        const auto &prefs = input.ue_prefs[k];
        const int n = static_cast<int>(prefs.size());
        if (!reapply)
        {
            while (cursor[k] < n && !state.open[prefs[cursor[k]]])
                ++cursor[k];
            return cursor[k] < n ? prefs[cursor[k]] : kUnassociated;
        }
        for (int step = 1; step <= n; ++step)
        {
            const int p = (last_applied[k] + step) % n;
            if (state.open[prefs[p]])
                return p;
        }
        return kUnassociated;
    };

    std::vector<int> rejection = initial_rejection_set(input);
    std::vector<std::vector<int>> applicants(J);

    while (!rejection.empty())
    {
        auto &log = ledger.begin_round();
        for (auto &a : applicants)
            a.clear();

        for (int k : rejection)
        {
            const int target = next_target(k);
            const int bs = reapply ? input.ue_prefs[k][target] : target;
            if (reapply)
                last_applied[k] = target;
            ledger.apply(log, k, bs);
            applicants[bs].push_back(k);
        }

        std::vector<int> accepted, rejected;
        for (std::size_t j = 0; j < J; ++j)
        {
            if (applicants[j].empty())
                continue;
            auto acc = ea_plu_batch(state, static_cast<int>(j), applicants[j], ledger, log, rejected);
            accepted.insert(accepted.end(), acc.begin(), acc.end());
        }
        ea_plu_end_round(state, accepted, log);

        std::vector<int> next;
        for (int k : rejected)
        {
            if (!reapply)
                ++cursor[k];
            if (next_target(k) != kUnassociated)
                next.push_back(k);
        }
        std::sort(next.begin(), next.end());
        rejection = std::move(next);
    }
    return ledger.finish();
}

} // namespace

GameInput GameInput::from(const PreferenceLists &prefs, std::vector<int> quotas)
{
    GameInput in{prefs.ue_order(), prefs.bs_order(), std::move(quotas)};
    in.validate();
    return in;
}

void GameInput::validate() const
{
    const std::size_t K = num_ues();
    const std::size_t J = num_bss();
    if (quotas.size() != J)
        throw std::invalid_argument("Quota vector length does not match the number of BS lists.");
    for (int q : quotas)
        if (q < 1)
            throw std::invalid_argument("Every quota must be at least 1.");

    std::vector<std::vector<char>> ue_side(K, std::vector<char>(J, 0));
    for (std::size_t k = 0; k < K; ++k)
        for (int j : ue_prefs[k])
        {
            if (j < 0 || static_cast<std::size_t>(j) >= J)
                throw std::invalid_argument("UE " + std::to_string(k) + " lists unknown BS " + std::to_string(j) + ".");
            if (ue_side[k][j])
                throw std::invalid_argument("UE " + std::to_string(k) + " lists BS " + std::to_string(j) + " twice.");
            ue_side[k][j] = 1;
        }

    std::vector<std::vector<char>> bs_side(K, std::vector<char>(J, 0));
    for (std::size_t j = 0; j < J; ++j)
        for (int k : bs_prefs[j])
        {
            if (k < 0 || static_cast<std::size_t>(k) >= K)
                throw std::invalid_argument("BS " + std::to_string(j) + " lists unknown UE " + std::to_string(k) + ".");
            if (bs_side[k][j])
                throw std::invalid_argument("BS " + std::to_string(j) + " lists UE " + std::to_string(k) + " twice.");
            bs_side[k][j] = 1;
        }

    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t j = 0; j < J; ++j)
            if (ue_side[k][j] != bs_side[k][j])
                throw std::invalid_argument("Pair (UE " + std::to_string(k) + ", BS " + std::to_string(j) +
                                            ") is listed on one side only.");
}

const char *to_string(MessageType type)
{
    switch (type)
    {
    case MessageType::Application:
        return "application";
    case MessageType::Accept:
        return "accept";
    case MessageType::Reject:
        return "reject";
    case MessageType::Waitlist:
        return "waitlist";
    case MessageType::QuotaExhausted:
        return "quota_exhausted";
    }
    return "?";
}

void GameTrace::write_event_log(std::ostream &os, int iteration_offset) const
{
    for (std::size_t n = 0; n < rounds.size(); ++n)
        for (const auto &m : rounds[n])
            os << (iteration_offset + static_cast<int>(n) + 1) << '\t' << to_string(m.type) << '\t' << m.ue << '\t' << m.bs << '\n';
}

const char *to_string(GameKind kind)
{
    switch (kind)
    {
    case GameKind::DeferredAcceptance:
        return "da";
    case GameKind::EaBase:
        return "ea_base";
    case GameKind::EaPlu:
        return "ea_plu";
    case GameKind::EaPluRa:
        return "ea_plu_ra";
    }
    return "?";
}

std::optional<GameKind> parse_game_kind(std::string_view name)
{
    for (auto kind : {GameKind::DeferredAcceptance, GameKind::EaBase, GameKind::EaPlu, GameKind::EaPluRa})
        if (name == to_string(kind))
            return kind;
    return std::nullopt;
}

bool is_early_acceptance(GameKind kind)
{
    return kind != GameKind::DeferredAcceptance;
}

GameResult run_da(const GameInput &input)
{
    input.validate();
    const std::size_t K = input.num_ues();
    const std::size_t J = input.num_bss();
    const auto rank = bs_ranks(input);

    Ledger ledger(K);
    std::vector<int> m(K, 0);
    std::vector<std::vector<int>> waiting(J);
    std::vector<std::vector<int>> applicants(J);
    std::vector<int> rejection = initial_rejection_set(input);

    while (!rejection.empty())
    {
        auto &log = ledger.begin_round();
        for (auto &a : applicants)
            a.clear();
        for (int k : rejection)
        {
            const int bs = input.ue_prefs[k][m[k]];
            ledger.apply(log, k, bs);
            applicants[bs].push_back(k);
        }

        std::vector<int> rejected;
        for (std::size_t j = 0; j < J; ++j)
        {
            if (applicants[j].empty())
                continue;
            const int bs = static_cast<int>(j);
            std::vector<int> pool = waiting[j];
            for (int k : applicants[j])
            {
                if (rank[j][k] == kNotListed)
                {
                    log.push_back({MessageType::Reject, k, bs});
                    rejected.push_back(k);
                }
                else
                    pool.push_back(k);
            }
            order_batch(pool, rank[j]);

            const std::size_t keep = std::min<std::size_t>(pool.size(), input.quotas[j]);
            const auto is_new = [&](int k) {
                return std::find(applicants[j].begin(), applicants[j].end(), k) != applicants[j].end();
            };
            for (std::size_t p = 0; p < pool.size(); ++p)
            {
                const int k = pool[p];
                if (p < keep)
                {
                    if (is_new(k))
                        log.push_back({MessageType::Waitlist, k, bs});
                }
                else
                {
                    log.push_back({MessageType::Reject, k, bs});
                    rejected.push_back(k);
                }
            }
            pool.resize(keep);
            waiting[j] = std::move(pool);
        }

        std::vector<int> next;
        for (int k : rejected)
            if (++m[k] < static_cast<int>(input.ue_prefs[k].size()))
                next.push_back(k);
        std::sort(next.begin(), next.end());
        rejection = std::move(next);
    }

    for (std::size_t j = 0; j < J; ++j)
        for (int k : waiting[j])
            ledger.result.beta[k] = static_cast<int>(j);
    for (std::size_t k = 0; k < K; ++k)
        if (ledger.result.beta.associated(k))
            ledger.result.trace.association_round[k] = ledger.round();
    return ledger.finish();
}

GameResult run_ea_base(const GameInput &input)
{
    input.validate();
    const std::size_t K = input.num_ues();
    const std::size_t J = input.num_bss();
    const auto rank = bs_ranks(input);

    Ledger ledger(K);
    std::vector<int> m(K, 0);
    std::vector<int> remaining = input.quotas;
    std::vector<std::vector<int>> applicants(J);
    std::vector<int> rejection = initial_rejection_set(input);

    while (!rejection.empty())
    {
        auto &log = ledger.begin_round();
        for (auto &a : applicants)
            a.clear();
        for (int k : rejection)
        {
            const int bs = input.ue_prefs[k][m[k]];
            ledger.apply(log, k, bs);
            applicants[bs].push_back(k);
        }

        std::vector<int> rejected;
        for (std::size_t j = 0; j < J; ++j)
        {
            order_batch(applicants[j], rank[j]);
            for (int k : applicants[j])
            {
                // top q_j of the original list, capped by the live quota
                if (rank[j][k] < input.quotas[j] && remaining[j] > 0)
                {
                    --remaining[j];
                    ledger.accept(log, k, static_cast<int>(j));
                }
                else
                {
                    log.push_back({MessageType::Reject, k, static_cast<int>(j)});
                    rejected.push_back(k);
                }
            }
        }

        std::vector<int> next;
        for (int k : rejected)
            if (++m[k] < static_cast<int>(input.ue_prefs[k].size()))
                next.push_back(k);
        std::sort(next.begin(), next.end());
        rejection = std::move(next);
    }
    return ledger.finish();
}

GameResult run_ea_plu(const GameInput &input)
{
    return run_ea_updating(input, false);
}

GameResult run_ea_plu_ra(const GameInput &input)
{
    return run_ea_updating(input, true);
}

GameResult run_game(GameKind kind, const GameInput &input)
{
    switch (kind)
    {
    case GameKind::DeferredAcceptance:
        return run_da(input);
    case GameKind::EaBase:
        return run_ea_base(input);
    case GameKind::EaPlu:
        return run_ea_plu(input);
    case GameKind::EaPluRa:
        return run_ea_plu_ra(input);
    }
    throw std::invalid_argument("Unknown game kind.");
}

} // namespace uassoc
