#include "hcg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <system_error>
#include <thread>

#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

namespace hcg {

using nlohmann::json;

Regime named_regime(std::string_view name) {
    if (name == "baseline") {
        return {"baseline", 0.0, 1.0, 0.0};
    }
    if (name == "contraction") {
        return {"contraction", 0.7, 0.2, 0.1};
    }
    if (name == "expansion") {
        return {"expansion", 0.1, 0.2, 0.7};
    }
    throw ConfigError("unknown regime '" + std::string(name) + "' (expected baseline, contraction, expansion or custom)");
}

Regime custom_regime(double pv, double pq) {
    return {"custom", pv, 1.0 - pv - pq, pq};
}

GameConfig apply_regime(GameConfig cfg, double pp, const Regime& regime) {
    cfg.priors = PriorConfig{pp, regime.pv, regime.pq};
    return cfg;
}

void SweepSpec::validate() const {
    std::vector<std::string> problems;
    if (pp_values.empty()) {
        problems.emplace_back("no pp values given");
    }
    if (regimes.empty()) {
        problems.emplace_back("no regimes given");
    }
    if (replicates < 1) {
        problems.emplace_back("at least one seed replicate is required");
    }
    for (const auto& r : regimes) {
        if (r.pv < 0.0 || r.pb < 0.0 || r.pq < 0.0 || std::abs(r.pv + r.pb + r.pq - 1.0) > 1e-12) {
            problems.push_back("regime '" + r.name + "': pv + pb + pq must equal 1 with each in [0,1]");
        }
    }
    for (double pp : pp_values) {
        for (const auto& r : regimes) {
            try {
                apply_regime(base, pp, r).validate();
            } catch (const ConfigError& e) {
                problems.push_back("pp=" + format_number(pp) + " regime '" + r.name + "': " + e.what());
            }
        }
    }
    if (!problems.empty()) {
        std::string msg = "invalid sweep (" + std::to_string(problems.size()) + " problem(s)):";
        for (const auto& p : problems) {
            msg += "\n  - " + p;
        }
        throw ConfigError(msg);
    }
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t pp_index, std::size_t replicate) {
    return derive_seed({master_seed, pp_index, replicate});
}

std::vector<SweepRun> sweep(const SweepSpec& spec, int workers) {
    spec.validate();

    std::vector<SweepRun> runs;
    runs.reserve(spec.run_count());
    for (std::size_t i = 0; i < spec.pp_values.size(); ++i) {
        for (std::size_t j = 0; j < spec.regimes.size(); ++j) {
            for (int r = 0; r < spec.replicates; ++r) {
                SweepRun run;
                run.pp = spec.pp_values[i];
                run.pp_index = i;
                run.regime = spec.regimes[j];
                run.regime_index = j;
                run.replicate = r;
                run.record.config = apply_regime(spec.base, run.pp, run.regime);
                run.record.config.seed = run_seed(spec.master_seed, i, static_cast<std::size_t>(r));
                runs.push_back(std::move(run));
            }
        }
    }

    const std::size_t pool = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, runs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < runs.size(); i = next++) {
            try {
                runs[i].record = run(runs[i].record.config);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (pool <= 1) {
        work();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(pool);
        for (std::size_t t = 0; t < pool; ++t) {
            threads.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return runs;
}

SweepRun single_run(const GameConfig& cfg, const Regime& regime, const StepObserver& observer) {
    SweepRun out;
    out.pp = cfg.priors.pp;
    out.regime = regime;
    out.record = run(apply_regime(cfg, cfg.priors.pp, regime), observer);
    return out;
}

// ---- settings ----------------------------------------------------------

namespace {

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "agents", "steps", "labels", "dim", "pp", "pv", "pq", "very-scale", "quite-scale", "w-min", "w-max",
        "seed", "seeds", "regime", "profile", "checkpoint-every", "out", "workers"};
    return keys;
}

template <typename T>
T get_as(const json& s, const char* key) {
    if (!s.contains(key)) {
        throw ConfigError(std::string("missing setting '") + key + "'");
    }
    try {
        return s.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("setting '") + key + "' has the wrong type");
    }
}

std::vector<double> as_number_list(const json& v, const char* key) {
    if (v.is_number()) {
        return {v.get<double>()};
    }
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) {
                throw ConfigError(std::string("setting '") + key + "' must hold numbers");
            }
            out.push_back(e.get<double>());
        }
        return out;
    }
    throw ConfigError(std::string("setting '") + key + "' must be a number or a list of numbers");
}

std::vector<std::string> as_string_list(const json& v, const char* key) {
    if (v.is_string()) {
        return {v.get<std::string>()};
    }
    if (v.is_array()) {
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) {
                throw ConfigError(std::string("setting '") + key + "' must hold strings");
            }
            out.push_back(e.get<std::string>());
        }
        return out;
    }
    throw ConfigError(std::string("setting '") + key + "' must be a string or a list of strings");
}

json default_pp_grid() {
    json grid = json::array();
    for (int i = 40; i <= 60; ++i) {
        grid.push_back(i / 100.0);
    }
    return grid;
}

} // namespace

json profile_defaults(std::string_view profile) {
    json s{
        {"profile", std::string(profile)},
        {"labels", 5},
        {"dim", 3},
        {"pp", default_pp_grid()},
        {"pv", 0.0},
        {"pq", 0.0},
        {"very-scale", 0.5},
        {"quite-scale", 2.0},
        {"w-min", 0.2},
        {"w-max", 0.8},
        {"seed", 1},
        {"regime", json::array({"baseline", "contraction", "expansion"})},
        {"checkpoint-every", 0},
        {"out", "out"},
        {"workers", 1},
    };
    if (profile == "desk") {
        s["agents"] = 40;
        s["steps"] = 4000;
        s["seeds"] = 5;
    } else if (profile == "paper") {
        s["agents"] = 100;
        s["steps"] = 10000;
        s["seeds"] = 20;
    } else {
        throw ConfigError("unknown profile '" + std::string(profile) + "' (expected desk or paper)");
    }
    return s;
}

json merge_settings(json base, const json& overrides) {
    if (!overrides.is_object()) {
        throw ConfigError("settings must be a JSON object");
    }
    for (const auto& [key, value] : overrides.items()) {
        base[key] = value;
    }
    return base;
}

json load_settings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (doc.is_object() && doc.contains("settings")) {
        doc = doc.at("settings");
    }
    if (!doc.is_object()) {
        throw ConfigError("config file " + path.string() + " must hold a JSON object");
    }
    const auto& keys = known_keys();
    for (const auto& [key, value] : doc.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("unknown setting '" + key + "' in " + path.string());
        }
    }
    return doc;
}

SweepSpec sweep_spec_from_settings(const json& s) {
    SweepSpec spec;
    GameConfig& cfg = spec.base;
    cfg.agents = get_as<int>(s, "agents");
    cfg.steps = get_as<std::int64_t>(s, "steps");
    cfg.labels = get_as<int>(s, "labels");
    cfg.dimension = get_as<int>(s, "dim");
    cfg.hedges = HedgeScales{get_as<double>(s, "very-scale"), get_as<double>(s, "quite-scale")};
    cfg.weights = WeightRange{get_as<double>(s, "w-min"), get_as<double>(s, "w-max")};
    cfg.checkpoint_every = get_as<std::int64_t>(s, "checkpoint-every");
    spec.master_seed = get_as<std::uint64_t>(s, "seed");
    cfg.seed = spec.master_seed;
    spec.replicates = get_as<int>(s, "seeds");

    if (!s.contains("pp")) {
        throw ConfigError("missing setting 'pp'");
    }
    spec.pp_values = as_number_list(s.at("pp"), "pp");
    if (!s.contains("regime")) {
        throw ConfigError("missing setting 'regime'");
    }
    for (const auto& name : as_string_list(s.at("regime"), "regime")) {
        if (name == "custom") {
            spec.regimes.push_back(custom_regime(get_as<double>(s, "pv"), get_as<double>(s, "pq")));
        } else {
            spec.regimes.push_back(named_regime(name));
        }
    }
    spec.validate();
    return spec;
}

// ---- output ------------------------------------------------------------

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_fixed(double v, int precision) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

} // namespace

std::string run_file_name(const SweepRun& run) {
    return run.regime.name + "_pp" + format_fixed(run.pp, 3) + "_r" + std::to_string(run.replicate) + ".csv";
}

std::string timeseries_csv(const RunRecord& record) {
    std::string out(timeseries_header);
    out += '\n';
    for (const auto& c : record.checkpoints) {
        out += std::to_string(c.round);
        out += ',';
        out += format_number(c.apd);
        out += ',';
        out += format_number(c.alo);
        out += '\n';
    }
    return out;
}

std::string summary_csv(std::span<const SweepRun> runs) {
    std::string out(summary_header);
    out += '\n';
    for (const auto& r : runs) {
        const auto& last = r.record.final_sample();
        out += format_number(r.pp) + ',' + r.regime.name + ',' + format_number(r.regime.pv) + ',' +
               format_number(r.regime.pb) + ',' + format_number(r.regime.pq) + ',' + std::to_string(r.replicate) +
               ',' + std::to_string(r.record.seed()) + ',' + format_number(last.apd) + ',' +
               format_number(last.alo) + '\n';
    }
    return out;
}

json manifest(const json& settings, std::span<const SweepRun> runs) {
    json entries = json::array();
    for (const auto& r : runs) {
        entries.push_back({
            {"file", "runs/" + run_file_name(r)},
            {"pp", r.pp},
            {"regime", r.regime.name},
            {"replicate", r.replicate},
            {"seed", r.record.seed()},
            {"checkpoints", r.record.checkpoints.size()},
        });
    }
    return json{
        {"library", "hedged_category_game"},
        {"version", std::string(library_version)},
        {"settings", settings},
        {"timeseries_columns", std::string(timeseries_header)},
        {"summary_columns", std::string(summary_header)},
        {"runs", entries},
    };
}

void emit(std::span<const SweepRun> runs, const json& settings, const std::filesystem::path& out_dir) {
    if (runs.empty()) {
        throw ConfigError("nothing to emit: no runs");
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir / "runs", ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }
    for (const auto& r : runs) {
        write_file(out_dir / "runs" / run_file_name(r), timeseries_csv(r.record));
    }
    write_file(out_dir / "manifest.json", manifest(settings, runs).dump(2) + "\n");

    const fs::path staged = out_dir / "summary.csv.tmp";
    write_file(staged, summary_csv(runs));
    fs::rename(staged, out_dir / "summary.csv", ec);
    if (ec) {
        throw IoError("cannot finalise summary.csv: " + ec.message());
    }
}

} // namespace hcg
