#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hcg/game_engine.hpp"

namespace hcg {

inline constexpr std::string_view library_version = "1.0.0";

// A named (pv, pb, pq) hedge-prior triple.
struct Regime {
    std::string name;
    double pv = 0.0;
    double pb = 1.0;
    double pq = 0.0;

    friend bool operator==(const Regime&, const Regime&) = default;
};

// baseline (0, 1, 0), contraction (0.7, 0.2, 0.1), expansion (0.1, 0.2, 0.7).
Regime named_regime(std::string_view name);
Regime custom_regime(double pv, double pq);
GameConfig apply_regime(GameConfig cfg, double pp, const Regime& regime);

struct SweepSpec {
    GameConfig base;
    std::vector<double> pp_values;
    std::vector<Regime> regimes;
    std::uint64_t master_seed = 1;
    int replicates = 5;

    // Throws ConfigError carrying one line per problem found.
    void validate() const;
    std::size_t run_count() const noexcept { return pp_values.size() * regimes.size() * static_cast<std::size_t>(replicates); }
};

// Per-run seed. The regime does not enter the key, so runs that differ
// only in regime share initial populations and object streams.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t pp_index, std::size_t replicate);

struct SweepRun {
    double pp = 0.0;
    std::size_t pp_index = 0;
    Regime regime;
    std::size_t regime_index = 0;
    int replicate = 0;
    RunRecord record;
};

// One run per (pp, regime, replicate), returned in that nested order
// regardless of `workers`.
std::vector<SweepRun> sweep(const SweepSpec& spec, int workers = 1);

// Single run wrapped for emission; cfg.seed is used as given.
SweepRun single_run(const GameConfig& cfg, const Regime& regime, const StepObserver& observer = {});

// ---- settings ----------------------------------------------------------
//
// Settings are a flat JSON object keyed by CLI flag name (without the
// leading dashes). Resolution order: profile defaults, config file, flags.

nlohmann::json profile_defaults(std::string_view profile);

// Layers `overrides` on top of `base` (shallow, key by key).
nlohmann::json merge_settings(nlohmann::json base, const nlohmann::json& overrides);

// Reads a config file. A sweep manifest is accepted too (its "settings"
// member is used), which makes every emitted sweep re-runnable.
nlohmann::json load_settings(const std::filesystem::path& path);

SweepSpec sweep_spec_from_settings(const nlohmann::json& settings);

// ---- output ------------------------------------------------------------

inline constexpr std::string_view timeseries_header = "round,apd,alo";
inline constexpr std::string_view summary_header = "pp,regime,pv,pb,pq,replicate,seed,final_apd,final_alo";

std::string format_number(double v);
std::string run_file_name(const SweepRun& run);
std::string timeseries_csv(const RunRecord& record);
std::string summary_csv(std::span<const SweepRun> runs);
nlohmann::json manifest(const nlohmann::json& settings, std::span<const SweepRun> runs);

// Writes runs/<name>.csv per run, summary.csv and manifest.json under
// out_dir. Throws IoError if the directory cannot be created or written;
// summary.csv is moved into place only after everything else succeeded.
void emit(std::span<const SweepRun> runs, const nlohmann::json& settings, const std::filesystem::path& out_dir);

} // namespace hcg
