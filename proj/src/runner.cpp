// SPDX-License-Identifier: Apache-2.0

#include "uassoc/runner.hpp"

#include "uassoc/baselines.hpp"
#include "uassoc/beamrate.hpp"
#include "uassoc/channel.hpp"
#include "uassoc/multigame.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace uassoc
{

namespace
{

// Independent RNG streams per trial so that adding a scheme never shifts the
// draws of another.
enum Stream : std::uint64_t
{
    kTopologyStream = 0,
    kChannelStream = 1,
    kReferenceStream = 2,
    kRandomSchemeStream = 3
};

std::mt19937_64 make_rng(std::uint64_t seed, Stream stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

std::optional<GameKind> single_game(Scheme s)
{
    switch (s)
    {
    case Scheme::Da:
        return GameKind::DeferredAcceptance;
    case Scheme::EaBase:
        return GameKind::EaBase;
    case Scheme::EaPlu:
        return GameKind::EaPlu;
    case Scheme::EaPluRa:
        return GameKind::EaPluRa;
    default:
        return std::nullopt;
    }
}

std::string event_log(const std::vector<const GameResult *> &games)
{
    std::ostringstream os;
    int offset = 0;
    for (const auto *g : games)
    {
        g->trace.write_event_log(os, offset);
        offset += g->trace.iterations;
    }
    return os.str();
}

// Shortest representation that round-trips; NaN as "nan".
std::string fmt(double x)
{
    if (std::isnan(x))
        return "nan";
    for (int p = 6;; ++p)
    {
        std::ostringstream os;
        os << std::setprecision(p) << x;
        if (p >= 17 || std::stod(os.str()) == x)
            return os.str();
    }
}

void write_key(std::ostream &os, const std::optional<SweepKey> &key)
{
    if (key)
        os << key->axis << ',' << fmt(key->value) << ',';
}

std::ofstream open_output(const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

void prepare_dir(const std::filesystem::path &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw std::runtime_error("cannot create output directory " + dir.string());
}

void write_event_logs(const std::filesystem::path &dir, const std::vector<TrialOutcome> &trials,
                      const std::string &prefix)
{
    const auto events = dir / "events";
    prepare_dir(events);
    for (const auto &t : trials)
        for (const auto &s : t.schemes)
        {
            if (s.event_log.empty())
                continue;
            auto out = open_output(events / (prefix + "trial" + std::to_string(t.trial) + "_" + to_string(s.scheme) +
                                             ".tsv"));
            out << "iter\ttype\tue\tbs\n" << s.event_log;
        }
}

} // namespace

TrialOutcome run_trial(const ExperimentConfig &cfg, int trial)
{
    TrialOutcome out;
    out.trial = trial;
    out.seed = cfg.seed + static_cast<std::uint64_t>(trial);

    auto topo_rng = make_rng(out.seed, kTopologyStream);
    auto chan_rng = make_rng(out.seed, kChannelStream);
    const Topology topo = make_topology(cfg.scenario, topo_rng);
    const ChannelSet channels = generate_channels(topo, cfg.channel, chan_rng);
    const BeamformerSet beams = compute_beamformers(topo, channels);
    const RateEvaluator eval(topo, channels, beams, NoiseModel::from(cfg.noise));
    const auto quotas = topo.quotas();
    const std::size_t K = topo.num_ue();
    const std::size_t J = topo.num_bs();
    out.num_ues = K;
    out.num_bss = J;

    AssociationVector reference(K);
    if (cfg.sinr_reference == SinrReference::Random)
    {
        auto ref_rng = make_rng(out.seed, kReferenceStream);
        reference = random_association(ref_rng, J, K, quotas);
    }
    const RateTable table = eval.table(reference);
    const Admissibility admissible = admissible_pairs(table.sinr, cfg.sinr_floor_db);

    std::optional<GameInput> single_input;
    auto game_input = [&]() -> const GameInput & {
        if (!single_input)
        {
            PreferenceLists prefs;
            switch (cfg.preference)
            {
            case PreferenceMethod::Rate:
                prefs = build_by_rate(table, admissible);
                break;
            case PreferenceMethod::ChannelNorm:
                prefs = build_by_channel_norm(channels, admissible);
                break;
            case PreferenceMethod::Cqi:
                prefs = build_by_cqi(table.sinr, cfg.cqi, admissible);
                break;
            }
            single_input = GameInput::from(prefs, quotas);
        }
        return *single_input;
    };

    std::optional<AssociationVector> max_sinr;
    auto max_sinr_beta = [&]() -> const AssociationVector & {
        if (!max_sinr)
            max_sinr = max_sinr_association(table.sinr, quotas);
        return *max_sinr;
    };

    for (Scheme scheme : cfg.schemes)
    {
        SchemeOutcome so{scheme, AssociationVector(K), {}, {}};
        if (const auto kind = single_game(scheme))
        {
            const GameResult r = run_game(*kind, game_input());
            so.beta = r.beta;
            so.metrics = game_metrics({&r}, *kind, r.beta, eval.utility(r.beta));
            if (cfg.event_logs)
                so.event_log = event_log({&r});
        }
        else if (scheme == Scheme::MultiDa || scheme == Scheme::MultiEa)
        {
            MultiGameConfig mg;
            mg.rounds = cfg.multigame_rounds;
            mg.inner_game = scheme == Scheme::MultiDa ? GameKind::DeferredAcceptance : GameKind::EaPluRa;
            mg.early_exit = cfg.multigame_early_exit;
            const auto r = run_multigame(mg, eval, admissible);
            std::vector<const GameResult *> games;
            for (const auto &g : r.games)
                games.push_back(&g);
            so.beta = r.beta;
            so.metrics = game_metrics(games, mg.inner_game, r.beta, r.tracker.best_utility);
            if (cfg.event_logs)
                so.event_log = event_log(games);
        }
        else if (scheme == Scheme::MaxSinr)
        {
            so.beta = max_sinr_beta();
            so.metrics = baseline_metrics(so.beta, eval.utility(so.beta));
        }
        else if (scheme == Scheme::Random)
        {
            auto rng = make_rng(out.seed, kRandomSchemeStream);
            so.beta = random_association(rng, J, K, quotas);
            so.metrics = baseline_metrics(so.beta, eval.utility(so.beta));
        }
        else if (scheme == Scheme::Swap)
        {
            const int sweeps = cfg.swap_max_sweeps > 0 ? cfg.swap_max_sweeps : static_cast<int>(10 * K);
            const auto r = centralized_swap(eval, max_sinr_beta(), sweeps);
            so.beta = r.beta;
            so.metrics = baseline_metrics(r.beta, r.utility);
            so.metrics.iterations = r.moves;
        }
        out.schemes.push_back(std::move(so));
    }
    return out;
}

std::vector<TrialOutcome> run_trials(const ExperimentConfig &cfg)
{
    cfg.validate();
    std::vector<TrialOutcome> results(cfg.trials);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (int t = next++; t < cfg.trials; t = next++)
        {
            try
            {
                results[t] = run_trial(cfg, t);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = cfg.trials;
            }
        }
    };

    const int workers = std::min(cfg.jobs, cfg.trials);
    if (workers <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);
    return results;
}

void write_results_header(std::ostream &os, bool with_key)
{
    if (with_key)
        os << "axis,value,";
    os << "trial,scheme,K,J,avg_delay,p25_delay,p75_delay,avg_power,unassoc_frac,utility,iters\n";
}

void write_results_rows(std::ostream &os, const std::vector<TrialOutcome> &trials, const std::optional<SweepKey> &key)
{
    for (const auto &t : trials)
        for (const auto &s : t.schemes)
        {
            const auto &m = s.metrics;
            write_key(os, key);
            os << t.trial << ',' << to_string(s.scheme) << ',' << t.num_ues << ',' << t.num_bss << ','
               << fmt(m.avg_delay) << ',' << fmt(m.p25_delay) << ',' << fmt(m.p75_delay) << ',' << fmt(m.avg_power)
               << ',' << fmt(m.unassociated_fraction) << ',' << fmt(m.utility) << ',' << m.iterations << '\n';
        }
}

void write_summary_header(std::ostream &os, bool with_key)
{
    if (with_key)
        os << "axis,value,";
    os << "scheme,metric,count,mean,p25,median,p75\n";
}

void write_summary_rows(std::ostream &os, const std::vector<TrialOutcome> &trials, const std::optional<SweepKey> &key)
{
    if (trials.empty())
        return;
    static const char *const metrics[] = {"avg_delay", "avg_power", "unassoc_frac", "utility", "iters"};
    for (std::size_t si = 0; si < trials.front().schemes.size(); ++si)
    {
        std::map<std::string, std::vector<double>> columns;
        for (const auto &t : trials)
        {
            const auto &m = t.schemes[si].metrics;
            columns["avg_delay"].push_back(m.avg_delay);
            columns["avg_power"].push_back(m.avg_power);
            columns["unassoc_frac"].push_back(m.unassociated_fraction);
            columns["utility"].push_back(m.utility);
            columns["iters"].push_back(m.iterations);
        }
        for (const char *name : metrics)
        {
            const auto a = aggregate(columns[name]);
            write_key(os, key);
            os << to_string(trials.front().schemes[si].scheme) << ',' << name << ',' << a.count << ','
               << fmt(a.mean) << ',' << fmt(a.p25) << ',' << fmt(a.median) << ',' << fmt(a.p75) << '\n';
        }
    }
}

void write_samples_header(std::ostream &os, bool with_key)
{
    if (with_key)
        os << "axis,value,";
    os << "trial,scheme,sample,delay,power\n";
}

void write_samples_rows(std::ostream &os, const std::vector<TrialOutcome> &trials, const std::optional<SweepKey> &key)
{
    for (const auto &t : trials)
        for (const auto &s : t.schemes)
            for (std::size_t i = 0; i < s.metrics.delay_samples.size(); ++i)
            {
                write_key(os, key);
                os << t.trial << ',' << to_string(s.scheme) << ',' << i << ',' << fmt(s.metrics.delay_samples[i])
                   << ',' << fmt(s.metrics.power_samples[i]) << '\n';
            }
}

std::vector<TrialOutcome> run_experiment(const ExperimentConfig &cfg)
{
    const std::filesystem::path dir(cfg.out);
    prepare_dir(dir);
    auto results = open_output(dir / "results.csv");
    auto summary = open_output(dir / "summary.csv");

    auto trials = run_trials(cfg);
    write_results_header(results, false);
    write_results_rows(results, trials);
    write_summary_header(summary, false);
    write_summary_rows(summary, trials);
    if (cfg.dump_samples)
    {
        auto samples = open_output(dir / "samples.csv");
        write_samples_header(samples, false);
        write_samples_rows(samples, trials);
    }
    if (cfg.event_logs)
        write_event_logs(dir, trials, "");
    return trials;
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name)
{
    if (name == "K")
        return SweepAxis::NumUes;
    if (name == "J")
        return SweepAxis::NumBss;
    if (name == "scbs_quota")
        return SweepAxis::ScbsQuota;
    return std::nullopt;
}

const char *to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::NumUes:
        return "K";
    case SweepAxis::NumBss:
        return "J";
    case SweepAxis::ScbsQuota:
        return "scbs_quota";
    }
    return "?";
}

ExperimentConfig apply_sweep_value(ExperimentConfig cfg, SweepAxis axis, int value)
{
    switch (axis)
    {
    case SweepAxis::NumUes:
        if (value < 0)
            throw std::invalid_argument("K must be non-negative");
        cfg.scenario.num_ues = static_cast<std::size_t>(value);
        break;
    case SweepAxis::NumBss: {
        const int macro = std::max<int>(1, static_cast<int>(cfg.scenario.mcbs_positions.size()));
        if (value < macro)
            throw std::invalid_argument("J must be at least the number of MCBSs");
        cfg.scenario.num_scbs = static_cast<std::size_t>(value - macro);
        cfg.scenario.scbs_positions.clear();
        break;
    }
    case SweepAxis::ScbsQuota:
        if (value < 1)
            throw std::invalid_argument("SCBS quota must be at least 1");
        cfg.scenario.scbs_quota = value;
        break;
    }
    return cfg;
}

void sweep(const ExperimentConfig &cfg, SweepAxis axis, const std::vector<int> &values)
{
    if (values.empty())
        throw std::invalid_argument("sweep needs at least one value");
    const std::filesystem::path dir(cfg.out);
    prepare_dir(dir);
    auto results = open_output(dir / "results.csv");
    auto summary = open_output(dir / "summary.csv");
    std::optional<std::ofstream> samples;
    if (cfg.dump_samples)
        samples = open_output(dir / "samples.csv");

    write_results_header(results, true);
    write_summary_header(summary, true);
    if (samples)
        write_samples_header(*samples, true);
    for (int v : values)
    {
        const auto point = apply_sweep_value(cfg, axis, v);
        const auto trials = run_trials(point);
        const SweepKey key{to_string(axis), static_cast<double>(v)};
        write_results_rows(results, trials, key);
        write_summary_rows(summary, trials, key);
        if (samples)
            write_samples_rows(*samples, trials, key);
        if (cfg.event_logs)
            write_event_logs(dir, trials, std::string(to_string(axis)) + std::to_string(v) + "_");
    }
}

} // namespace uassoc
