// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "support.hpp"
#include "uassoc/runner.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

using namespace uassoc;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(const std::string &name, const std::function<Verdict()> &check)
{
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try
    {
        v = check();
    }
    catch (const std::exception &e)
    {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !v.pass;
    std::printf("%s %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ExperimentConfig reference_config(std::size_t num_ues, std::vector<Scheme> schemes)
{
    ExperimentConfig c;
    c.scenario.num_ues = num_ues;
    c.schemes = std::move(schemes);
    c.trials = 100;
    c.seed = 20240601;
    c.jobs = std::max(1u, std::thread::hardware_concurrency());
    return c;
}

const SchemeOutcome &outcome(const TrialOutcome &t, Scheme s)
{
    for (const auto &o : t.schemes)
        if (o.scheme == s)
            return o;
    throw std::logic_error("scheme missing from trial");
}

double mean_of(const std::vector<TrialOutcome> &trials, Scheme s, double TrialMetrics::*field)
{
    double acc = 0.0;
    for (const auto &t : trials)
        acc += outcome(t, s).metrics.*field;
    return acc / static_cast<double>(trials.size());
}

Verdict two_player_instance()
{
    const auto in = testing::table_one();
    const auto r = run_da(in);
    const bool da_ok = r.beta == AssociationVector({0, 1});
    const bool stable = is_stable(r.beta, in).stable;
    const auto alt = is_stable(AssociationVector({1, 0}), in);
    const bool witness = !alt.stable && alt.blocking_pair == std::pair{0, 0};
    const auto m = testing::table_two_metrics();
    const double us = testing::matching_value(m, r.beta.serving);
    const double uu = testing::matching_value(m, {1, 0});
    return {da_ok && stable && witness && us == 5.0 && uu == 6.0,
            fmt("DA={alpha->%d,beta->%d} stable=%d witness=%d U_stable=%g U_unstable=%g", r.beta[0], r.beta[1],
                stable, witness, us, uu)};
}

Verdict lemma_one()
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> dj(1, 8), dk(1, 40);
    int worst_excess = -100, violations = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const int J = dj(rng), K = dk(rng);
        std::uniform_int_distribution<int> total(J, std::max(J, K + 5));
        const auto in = testing::random_full_instance(rng, J, K, testing::random_quotas(rng, J, total(rng)));
        for (auto kind : {GameKind::EaBase, GameKind::EaPlu})
        {
            const int it = run_game(kind, in).trace.iterations;
            worst_excess = std::max(worst_excess, it - J);
            violations += it > J;
        }
    }
    return {violations == 0, fmt("2000 runs, violations=%d, max(N_iter - J)=%d", violations, worst_excess)};
}

Verdict lemma_two()
{
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> dj(1, 8), dk(1, 40);
    int bad = 0, under = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const int J = dj(rng);
        const int K = std::max(1, dk(rng));
        std::uniform_int_distribution<int> slack(0, 10);
        const int total = std::max(J, K + (i % 2 ? slack(rng) : 0));
        const auto in = testing::random_full_instance(rng, J, K, testing::random_quotas(rng, J, total));
        under += total > K;
        bad += !run_ea_plu_ra(in).unassociated.empty();
    }
    return {bad == 0, fmt("1000 instances (%d underload), with unassociated UEs: %d", under, bad)};
}

Verdict lemma_four()
{
    std::mt19937_64 rng(4);
    int worst = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const auto quotas = i % 2 ? std::vector<int>{15, 5, 5, 5, 5} : testing::random_quotas(rng, 5, 35);
        const auto in = testing::random_full_instance(rng, 5, 35, quotas);
        worst = std::max(worst, run_ea_plu_ra(in).trace.iterations);
    }
    return {worst <= 165, fmt("max N_iter over 1000 instances = %d (bound 165)", worst)};
}

Verdict da_plateau()
{
    int off = 0, total = 0;
    double lo = 1e9, hi = 0.0;
    for (std::size_t K : {40u, 50u, 60u, 70u})
    {
        const auto trials = run_trials(reference_config(K, {Scheme::Da}));
        for (const auto &t : trials)
        {
            const double d = t.schemes[0].metrics.avg_delay;
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            off += d != 5.0;
            ++total;
        }
    }
    return {off == 0, fmt("%d/%d trials with DA delay != 5, range [%g, %g]", off, total, lo, hi)};
}

Verdict delay_trend(const std::vector<TrialOutcome> &trials)
{
    const double da = mean_of(trials, Scheme::Da, &TrialMetrics::avg_delay);
    bool ok = true;
    std::ostringstream os;
    os << "DA " << da;
    for (auto s : {Scheme::EaBase, Scheme::EaPlu, Scheme::EaPluRa})
    {
        const double m = mean_of(trials, s, &TrialMetrics::avg_delay);
        int wins = 0;
        for (const auto &t : trials)
            wins += outcome(t, s).metrics.avg_delay < outcome(t, Scheme::Da).metrics.avg_delay;
        const double frac = static_cast<double>(wins) / static_cast<double>(trials.size());
        ok = ok && m < da && frac >= 0.95;
        os << ", " << to_string(s) << ' ' << m << " (" << 100.0 * frac << "% of trials below DA)";
    }
    return {ok, os.str()};
}

Verdict power_trend(const std::vector<TrialOutcome> &trials)
{
    const double da = mean_of(trials, Scheme::Da, &TrialMetrics::avg_power);
    const double ra = mean_of(trials, Scheme::EaPluRa, &TrialMetrics::avg_power);
    return {da <= ra, fmt("mean power DA %.4f, EA-PLU-RA %.4f", da, ra)};
}

Verdict unassociated_match()
{
    std::ostringstream os;
    bool ok = true;
    for (std::size_t K : {28u, 35u, 42u})
    {
        const auto trials = run_trials(reference_config(K, {Scheme::Da, Scheme::EaBase, Scheme::EaPluRa}));
        int mismatch = 0, base_below = 0;
        double ra = 0.0, base = 0.0;
        for (const auto &t : trials)
        {
            const double d = outcome(t, Scheme::Da).metrics.unassociated_fraction;
            const double r = outcome(t, Scheme::EaPluRa).metrics.unassociated_fraction;
            const double b = outcome(t, Scheme::EaBase).metrics.unassociated_fraction;
            mismatch += d != r;
            base_below += b < r;
            ra += r;
            base += b;
        }
        ok = ok && mismatch == 0 && base_below == 0;
        os << "K=" << K << ": mismatches " << mismatch << ", EA-Base below " << base_below << ", mean unassoc "
           << ra / trials.size() << " vs EA-Base " << base / trials.size() << "; ";
    }
    return {ok, os.str()};
}

Verdict utility_ordering(const std::vector<TrialOutcome> &trials)
{
    const double rnd = mean_of(trials, Scheme::Random, &TrialMetrics::utility);
    const double ms = mean_of(trials, Scheme::MaxSinr, &TrialMetrics::utility);
    const double ea = mean_of(trials, Scheme::EaPluRa, &TrialMetrics::utility);
    const double multi = mean_of(trials, Scheme::MultiEa, &TrialMetrics::utility);
    const double sw = mean_of(trials, Scheme::Swap, &TrialMetrics::utility);
    const bool ok = rnd < ms && ms <= ea && ea <= multi && multi <= sw && ea >= 0.75 * sw;
    return {ok, fmt("random %.2f < max-SINR %.2f <= EA-PLU-RA %.2f <= multi-EA %.2f <= swap %.2f; EA/swap = %.1f%%",
                    rnd, ms, ea, multi, sw, 100.0 * ea / sw)};
}

Verdict oracle_equivalence()
{
    int swap_bad = 0, swap_total = 0;
    for (int inst = 0; inst < 60; ++inst)
        for (std::size_t K = 1; K <= 3; ++K)
        {
            const auto sc = inst % 2 ? testing::make_scbs_pair(9000 + 10 * inst + K, K)
                                     : testing::make_scenario(9000 + 10 * inst + K, K, 1, {1, 1});
            const auto eval = sc.evaluator();
            const auto start = max_sinr_association(eval.table(AssociationVector(K)).sinr, sc.topo.quotas());
            const double u = centralized_swap(eval, start, 10 * static_cast<int>(K)).utility;
            const double opt = testing::brute_force_optimum(eval);
            swap_bad += std::abs(u - opt) > 1e-12 * std::max(1.0, opt);
            ++swap_total;
        }

    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> dj(1, 5), dk(0, 12);
    int da_bad = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const auto in = testing::random_partial_instance(rng, dj(rng), dk(rng), 0.75);
        da_bad += run_da(in).beta.serving != testing::textbook_deferred_acceptance(in);
    }
    return {swap_bad == 0 && da_bad == 0,
            fmt("swap != optimum on %d/%d instances; DA != textbook on %d/1000", swap_bad, swap_total, da_bad)};
}

Verdict rate_oracle()
{
    std::mt19937_64 rng(7);
    double worst = 0.0;
    int pairs = 0;
    for (int inst = 0; inst < 100; ++inst)
    {
        const int streams = inst % 4 == 0 ? 2 : 1;
        const auto sc = testing::make_scenario(7000 + inst, 6, 3, {2, 2}, streams);
        const auto eval = sc.evaluator();
        std::uniform_int_distribution<int> pick(-1, 3);
        AssociationVector beta(6);
        do
        {
            for (std::size_t k = 0; k < 6; ++k)
                beta[k] = pick(rng);
        } while (validate_association(beta, sc.topo));
        for (int k = 0; k < 6; ++k)
            for (int j = 0; j < 4; ++j)
            {
                const double r = instantaneous_rate(k, j, beta, eval);
                const double o = testing::term_by_term_rate(sc, k, j, eval.hypothetical_sets(k, j, beta));
                worst = std::max(worst, std::abs(r - o) / std::max(std::abs(o), 1e-300));
                ++pairs;
            }
    }
    return {worst <= 1e-9, fmt("%d pairs, max relative error %.3e", pairs, worst)};
}

} // namespace

int main()
{
    report("table-I/II two-player instance", two_player_instance);
    report("lemma-1 EA-Base/EA-PLU converge within J", lemma_one);
    report("lemma-2 EA-PLU-RA associates everyone without overload", lemma_two);
    report("lemma-4 EA-PLU-RA iteration bound at J=5 K=35", lemma_four);
    report("fig-6 DA overload delay equals J", da_plateau);

    std::vector<TrialOutcome> paired;
    report("paired trials at J=5 K=35", [&] {
        paired = run_trials(reference_config(35, {Scheme::Da, Scheme::EaBase, Scheme::EaPlu, Scheme::EaPluRa,
                                                  Scheme::MaxSinr, Scheme::Random, Scheme::MultiEa, Scheme::Swap}));
        return Verdict{paired.size() == 100, fmt("%zu trials", paired.size())};
    });
    report("fig-3 EA delay below DA", [&] { return delay_trend(paired); });
    report("fig-4 DA power not above EA-PLU-RA", [&] { return power_trend(paired); });
    report("fig-7 unassociated fraction per load", unassociated_match);
    report("fig-8 utility ordering", [&] { return utility_ordering(paired); });
    report("oracle equivalence (swap, DA)", oracle_equivalence);
    report("rate vs term-by-term oracle", rate_oracle);

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
