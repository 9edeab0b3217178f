// SPDX-License-Identifier: Apache-2.0

#include "uassoc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace uassoc
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double to_double(std::string_view v)
{
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
    return x;
}

long long to_integer(std::string_view v)
{
    long long x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
    return x;
}

bool to_bool(std::string_view v)
{
    if (v == "true" || v == "yes" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "0")
        return false;
    throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

// "x:y, x:y"
std::vector<Position> to_positions(std::string_view v)
{
    std::vector<Position> out;
    if (v.empty())
        return out;
    for (auto item : split(v, ','))
    {
        const auto xy = split(item, ':');
        if (xy.size() != 2)
            throw std::invalid_argument("expected positions as x:y, got '" + std::string(item) + "'");
        out.push_back({to_double(xy[0]), to_double(xy[1])});
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig &, std::string_view)>;

template <typename T> Setter integer(T ExperimentConfig::*field)
{
    return [field](ExperimentConfig &c, std::string_view v) { c.*field = static_cast<T>(to_integer(v)); };
}

std::map<std::string, Setter> make_setters()
{
    std::map<std::string, Setter> s;
    auto num = [](auto get) {
        return [get](ExperimentConfig &c, std::string_view v) { get(c) = to_double(v); };
    };
    auto count = [](auto get) {
        return [get](ExperimentConfig &c, std::string_view v) {
            const auto x = to_integer(v);
            if (x < 0)
                throw std::invalid_argument("expected a non-negative integer");
            get(c) = static_cast<std::remove_reference_t<decltype(get(c))>>(x);
        };
    };

    s["scenario.area_width"] = num([](auto &c) -> double & { return c.scenario.area.width; });
    s["scenario.area_height"] = num([](auto &c) -> double & { return c.scenario.area.height; });
    s["scenario.num_ues"] = count([](auto &c) -> std::size_t & { return c.scenario.num_ues; });
    s["scenario.num_scbs"] = count([](auto &c) -> std::size_t & { return c.scenario.num_scbs; });
    s["scenario.scbs_ring_radius"] = num([](auto &c) -> double & { return c.scenario.scbs_ring_radius; });
    s["scenario.mcbs_positions"] = [](ExperimentConfig &c, std::string_view v) {
        c.scenario.mcbs_positions = to_positions(v);
    };
    s["scenario.scbs_positions"] = [](ExperimentConfig &c, std::string_view v) {
        c.scenario.scbs_positions = to_positions(v);
    };
    s["scenario.mcbs_quota"] = count([](auto &c) -> int & { return c.scenario.mcbs_quota; });
    s["scenario.scbs_quota"] = count([](auto &c) -> int & { return c.scenario.scbs_quota; });
    s["scenario.mcbs_array_rows"] = count([](auto &c) -> int & { return c.scenario.mcbs_array_rows; });
    s["scenario.mcbs_array_cols"] = count([](auto &c) -> int & { return c.scenario.mcbs_array_cols; });
    s["scenario.scbs_array_rows"] = count([](auto &c) -> int & { return c.scenario.scbs_array_rows; });
    s["scenario.scbs_array_cols"] = count([](auto &c) -> int & { return c.scenario.scbs_array_cols; });
    s["scenario.ue_array_rows"] = count([](auto &c) -> int & { return c.scenario.ue_array_rows; });
    s["scenario.ue_array_cols"] = count([](auto &c) -> int & { return c.scenario.ue_array_cols; });
    s["scenario.ue_streams"] = count([](auto &c) -> int & { return c.scenario.ue_streams; });
    s["scenario.mcbs_power_dbm"] = num([](auto &c) -> double & { return c.scenario.mcbs_power_dbm; });
    s["scenario.scbs_power_dbm"] = num([](auto &c) -> double & { return c.scenario.scbs_power_dbm; });
    s["scenario.mcbs_carrier_ghz"] = [](ExperimentConfig &c, std::string_view v) {
        c.scenario.mcbs_carrier_hz = to_double(v) * 1e9;
    };
    s["scenario.scbs_carrier_ghz"] = [](ExperimentConfig &c, std::string_view v) {
        c.scenario.scbs_carrier_hz = to_double(v) * 1e9;
    };

    s["channel.clusters"] = count([](auto &c) -> int & { return c.channel.cluster.clusters; });
    s["channel.rays"] = count([](auto &c) -> int & { return c.channel.cluster.rays; });
    s["channel.angle_spread_deg"] = [](ExperimentConfig &c, std::string_view v) {
        c.channel.cluster.angle_spread_rad = to_double(v) * std::numbers::pi / 180.0;
    };
    s["channel.cluster_decay"] = num([](auto &c) -> double & { return c.channel.cluster.decay; });
    s["channel.pathloss_intercept_db"] = num([](auto &c) -> double & { return c.channel.path_loss.intercept_db; });
    s["channel.mmwave_los_exponent"] =
        num([](auto &c) -> double & { return c.channel.path_loss.mmwave_los_exponent; });
    s["channel.mmwave_nlos_exponent"] =
        num([](auto &c) -> double & { return c.channel.path_loss.mmwave_nlos_exponent; });
    s["channel.sub6_los_exponent"] = num([](auto &c) -> double & { return c.channel.path_loss.sub6_los_exponent; });
    s["channel.sub6_nlos_exponent"] =
        num([](auto &c) -> double & { return c.channel.path_loss.sub6_nlos_exponent; });
    s["channel.los_distance_m"] = num([](auto &c) -> double & { return c.channel.path_loss.los_distance_m; });
    s["channel.min_distance_m"] = num([](auto &c) -> double & { return c.channel.path_loss.min_distance_m; });
    s["channel.noise_psd_dbm_hz"] = num([](auto &c) -> double & { return c.noise.psd_dbm_hz; });
    s["channel.noise_figure_db"] = num([](auto &c) -> double & { return c.noise.noise_figure_db; });
    s["channel.sub6_bandwidth_mhz"] = [](ExperimentConfig &c, std::string_view v) {
        c.noise.sub6_bandwidth_hz = to_double(v) * 1e6;
    };
    s["channel.mmwave_bandwidth_mhz"] = [](ExperimentConfig &c, std::string_view v) {
        c.noise.mmwave_bandwidth_hz = to_double(v) * 1e6;
    };

    s["association.preference"] = [](ExperimentConfig &c, std::string_view v) {
        const auto m = parse_preference_method(v);
        if (!m)
            throw std::invalid_argument("unknown preference method '" + std::string(v) + "'");
        c.preference = *m;
    };
    s["association.sinr_floor_db"] = [](ExperimentConfig &c, std::string_view v) {
        if (v == "none")
            c.sinr_floor_db.reset();
        else
            c.sinr_floor_db = to_double(v);
    };
    s["association.sinr_reference"] = [](ExperimentConfig &c, std::string_view v) {
        if (v == "empty")
            c.sinr_reference = SinrReference::Empty;
        else if (v == "random")
            c.sinr_reference = SinrReference::Random;
        else
            throw std::invalid_argument("sinr_reference must be empty or random");
    };
    s["association.cqi_min_db"] = num([](auto &c) -> double & { return c.cqi.min_db; });
    s["association.cqi_step_db"] = num([](auto &c) -> double & { return c.cqi.step_db; });
    s["association.cqi_levels"] = count([](auto &c) -> int & { return c.cqi.levels; });
    s["association.schemes"] = [](ExperimentConfig &c, std::string_view v) { c.schemes = parse_scheme_list(v); };
    s["association.multigame_rounds"] = integer(&ExperimentConfig::multigame_rounds);
    s["association.multigame_early_exit"] = [](ExperimentConfig &c, std::string_view v) {
        c.multigame_early_exit = to_bool(v);
    };
    s["association.swap_max_sweeps"] = integer(&ExperimentConfig::swap_max_sweeps);

    s["run.trials"] = integer(&ExperimentConfig::trials);
    s["run.seed"] = [](ExperimentConfig &c, std::string_view v) {
        const auto x = to_integer(v);
        if (x < 0)
            throw std::invalid_argument("seed must be non-negative");
        c.seed = static_cast<std::uint64_t>(x);
    };
    s["run.jobs"] = integer(&ExperimentConfig::jobs);
    s["run.out"] = [](ExperimentConfig &c, std::string_view v) { c.out = std::string(v); };
    s["run.dump_samples"] = [](ExperimentConfig &c, std::string_view v) { c.dump_samples = to_bool(v); };
    s["run.event_logs"] = [](ExperimentConfig &c, std::string_view v) { c.event_logs = to_bool(v); };
    return s;
}

} // namespace

ConfigError::ConfigError(const std::string &source, int line, const std::string &message)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message),
      line_(line)
{
}

const char *to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::Da:
        return "da";
    case Scheme::EaBase:
        return "ea_base";
    case Scheme::EaPlu:
        return "ea_plu";
    case Scheme::EaPluRa:
        return "ea_plu_ra";
    case Scheme::MaxSinr:
        return "max_sinr";
    case Scheme::Random:
        return "random";
    case Scheme::Swap:
        return "swap";
    case Scheme::MultiDa:
        return "multi_da";
    case Scheme::MultiEa:
        return "multi_ea";
    }
    return "?";
}

std::vector<Scheme> all_schemes()
{
    return {Scheme::Da,     Scheme::EaBase, Scheme::EaPlu,   Scheme::EaPluRa, Scheme::MaxSinr,
            Scheme::Random, Scheme::Swap,   Scheme::MultiDa, Scheme::MultiEa};
}

std::optional<Scheme> parse_scheme(std::string_view name)
{
    for (auto s : all_schemes())
        if (name == to_string(s))
            return s;
    return std::nullopt;
}

std::vector<Scheme> parse_scheme_list(std::string_view list)
{
    std::vector<Scheme> out;
    for (auto name : split(list, ','))
    {
        if (name == "all")
        {
            out = all_schemes();
            continue;
        }
        const auto s = parse_scheme(name);
        if (!s)
            throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
        out.push_back(*s);
    }
    if (out.empty())
        throw std::invalid_argument("scheme list is empty");
    return out;
}

void ExperimentConfig::validate() const
{
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (jobs < 1)
        throw std::invalid_argument("jobs must be at least 1");
    if (multigame_rounds < 1)
        throw std::invalid_argument("multigame_rounds must be at least 1");
    if (swap_max_sweeps < 0)
        throw std::invalid_argument("swap_max_sweeps must be non-negative");
    if (schemes.empty())
        throw std::invalid_argument("no schemes selected");
    if (scenario.mcbs_quota < 1 || scenario.scbs_quota < 1)
        throw std::invalid_argument("quotas must be at least 1");
    if (channel.cluster.clusters < 1 || channel.cluster.rays < 1)
        throw std::invalid_argument("clusters and rays must be at least 1");
    if (cqi.levels < 1 || cqi.step_db <= 0.0)
        throw std::invalid_argument("CQI quantizer needs at least one level and a positive step");
    if (scenario.area.width <= 0.0 || scenario.area.height <= 0.0)
        throw std::invalid_argument("area dimensions must be positive");
}

ExperimentConfig parse_config(std::string_view text, const std::string &source)
{
    static const auto setters = make_setters();
    static const char *const sections[] = {"scenario", "channel", "association", "run"};

    ExperimentConfig cfg;
    std::string section;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos)
            line = line.substr(0, c);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ConfigError(source, line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (std::find(std::begin(sections), std::end(sections), section) == std::end(sections))
                throw ConfigError(source, line_no, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(source, line_no, "expected key = value");
        if (section.empty())
            throw ConfigError(source, line_no, "key outside of a section");
        const std::string key(trim(line.substr(0, eq)));
        const auto it = setters.find(section + "." + key);
        if (it == setters.end())
            throw ConfigError(source, line_no, "unknown key '" + key + "' in [" + section + "]");
        try
        {
            it->second(cfg, trim(line.substr(eq + 1)));
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(source, line_no, key + ": " + e.what());
        }
    }

    try
    {
        cfg.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(source, 0, e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

} // namespace uassoc
