// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: an INI-style file with [scenario], [channel],
// [association] and [run] sections. Unknown sections or keys and malformed
// values are rejected with the offending line number.

#pragma once

#include "uassoc/beamrate.hpp"
#include "uassoc/channel.hpp"
#include "uassoc/games.hpp"
#include "uassoc/netmodel.hpp"
#include "uassoc/prefs.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uassoc
{

class ConfigError : public std::runtime_error
{
  public:
    ConfigError(const std::string &source, int line, const std::string &message);

    int line() const { return line_; }

  private:
    int line_;
};

enum class Scheme
{
    Da,
    EaBase,
    EaPlu,
    EaPluRa,
    MaxSinr,
    Random,
    Swap,
    MultiDa,
    MultiEa
};

const char *to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
std::vector<Scheme> all_schemes();

/// Parses a comma-separated scheme list; throws std::invalid_argument on an
/// unknown name.
std::vector<Scheme> parse_scheme_list(std::string_view list);

/// Association evaluated to fill the SINR/rate tables that feed preference
/// lists, the SINR floor and the max-SINR baseline.
enum class SinrReference
{
    Empty, // no other UE is served
    Random // a uniform random association drawn per trial
};

struct ExperimentConfig
{
    ScenarioParams scenario;
    ChannelParams channel;
    NoiseParams noise;

    PreferenceMethod preference = PreferenceMethod::Rate;
    std::optional<double> sinr_floor_db;
    CqiQuantizer cqi;
    SinrReference sinr_reference = SinrReference::Random;
    std::vector<Scheme> schemes = all_schemes();
    int multigame_rounds = 10;
    bool multigame_early_exit = false;
    int swap_max_sweeps = 0; // 0: 10 K

    int trials = 100;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out = "results";
    bool dump_samples = false;
    bool event_logs = false;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// `source` names the input in error messages.
ExperimentConfig parse_config(std::string_view text, const std::string &source = "<config>");
ExperimentConfig load_config(const std::string &path);

} // namespace uassoc
