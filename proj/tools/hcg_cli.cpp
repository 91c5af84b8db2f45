// hcg: command-line driver for the hedged category game.
//
//   hcg run   [flags]   one run, seed used as given
//   hcg sweep [flags]   Cartesian product of pp values x regimes x seeds
//
// Every flag can also be given in a JSON config file (--config), keyed by
// the flag name without dashes; flags override the file. A sweep's
// manifest.json is itself a valid config file.
//
// Exit codes: 0 ok, 1 internal, 2 configuration, 3 I/O, 4 undefined result.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hcg/errors.hpp"
#include "hcg/harness.hpp"

namespace {

using nlohmann::json;

struct Flags {
    std::optional<std::string> config;
    std::optional<int> agents;
    std::optional<std::int64_t> steps;
    std::optional<int> labels;
    std::optional<int> dim;
    std::vector<double> pp;
    std::optional<double> pv;
    std::optional<double> pq;
    std::optional<double> very_scale;
    std::optional<double> quite_scale;
    std::optional<double> w_min;
    std::optional<double> w_max;
    std::optional<std::uint64_t> seed;
    std::optional<int> seeds;
    std::vector<std::string> regime;
    std::optional<std::string> profile;
    std::optional<std::int64_t> checkpoint_every;
    std::optional<std::string> out;
    std::optional<int> workers;
};

void add_flags(CLI::App& cmd, Flags& f, bool sweep) {
    cmd.add_option("--config", f.config, "JSON config file (or a previous manifest.json)");
    cmd.add_option("--agents", f.agents, "population size N (even)");
    cmd.add_option("--steps", f.steps, "timesteps T");
    cmd.add_option("--labels", f.labels, "labels per agent n");
    cmd.add_option("--dim", f.dim, "dimension of the conceptual space");
    cmd.add_option("--pp", f.pp, sweep ? "prior(s) of positive assertions" : "prior of positive assertions");
    cmd.add_option("--pv", f.pv, "prior of 'very' (custom regime)");
    cmd.add_option("--pq", f.pq, "prior of 'quite' (custom regime)");
    cmd.add_option("--very-scale", f.very_scale, "threshold scale for 'very' (0,1)");
    cmd.add_option("--quite-scale", f.quite_scale, "threshold scale for 'quite' (>1)");
    cmd.add_option("--w-min", f.w_min, "minimum agent weight");
    cmd.add_option("--w-max", f.w_max, "maximum agent weight");
    cmd.add_option("--seed", f.seed, sweep ? "master seed" : "run seed");
    cmd.add_option("--seeds", f.seeds, "replicates per (pp, regime)");
    cmd.add_option("--regime", f.regime, "baseline|contraction|expansion|custom")
        ->check(CLI::IsMember({"baseline", "contraction", "expansion", "custom"}));
    cmd.add_option("--profile", f.profile, "desk|paper")->check(CLI::IsMember({"desk", "paper"}));
    cmd.add_option("--checkpoint-every", f.checkpoint_every, "rounds between metric samples (0 = T/100)");
    cmd.add_option("--out", f.out, "output directory");
    cmd.add_option("--workers", f.workers, "parallel runs");
}

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
    if (v) {
        j[key] = *v;
    }
}

json resolve_settings(const Flags& f) {
    json flags = json::object();
    put(flags, "agents", f.agents);
    put(flags, "steps", f.steps);
    put(flags, "labels", f.labels);
    put(flags, "dim", f.dim);
    if (!f.pp.empty()) {
        flags["pp"] = f.pp;
    }
    put(flags, "pv", f.pv);
    put(flags, "pq", f.pq);
    put(flags, "very-scale", f.very_scale);
    put(flags, "quite-scale", f.quite_scale);
    put(flags, "w-min", f.w_min);
    put(flags, "w-max", f.w_max);
    put(flags, "seed", f.seed);
    put(flags, "seeds", f.seeds);
    if (!f.regime.empty()) {
        flags["regime"] = f.regime;
    }
    put(flags, "profile", f.profile);
    put(flags, "checkpoint-every", f.checkpoint_every);
    put(flags, "out", f.out);
    put(flags, "workers", f.workers);

    json file = f.config ? hcg::load_settings(*f.config) : json::object();
    std::string profile = "desk";
    if (flags.contains("profile")) {
        profile = flags["profile"].get<std::string>();
    } else if (file.contains("profile")) {
        profile = file["profile"].get<std::string>();
    }
    return hcg::merge_settings(hcg::merge_settings(hcg::profile_defaults(profile), file), flags);
}

int do_sweep(const Flags& f) {
    const json settings = resolve_settings(f);
    const hcg::SweepSpec spec = hcg::sweep_spec_from_settings(settings);
    const int workers = settings.at("workers").get<int>();
    const std::filesystem::path out = settings.at("out").get<std::string>();

    std::cerr << "sweep: " << spec.run_count() << " runs, " << workers << " worker(s)\n";
    const auto t0 = std::chrono::steady_clock::now();
    const auto runs = hcg::sweep(spec, workers);
    hcg::emit(runs, settings, out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "wrote " << (out / "summary.csv").string() << " in " << secs << " s\n";
    return 0;
}

int do_run(const Flags& f) {
    json settings = resolve_settings(f);
    // A single run takes one pp and one regime; the profile's sweep lists
    // collapse to their defaults unless given explicitly.
    if (f.pp.empty() && !(f.config && hcg::load_settings(*f.config).contains("pp"))) {
        settings["pp"] = 0.5;
    }
    if (f.regime.empty() && !(f.config && hcg::load_settings(*f.config).contains("regime"))) {
        settings["regime"] = "baseline";
    }
    settings["seeds"] = 1;
    const hcg::SweepSpec spec = hcg::sweep_spec_from_settings(settings);
    if (spec.pp_values.size() != 1 || spec.regimes.size() != 1) {
        throw hcg::ConfigError("run takes exactly one --pp value and one --regime");
    }
    hcg::GameConfig cfg = hcg::apply_regime(spec.base, spec.pp_values.front(), spec.regimes.front());
    cfg.seed = spec.master_seed;
    const std::vector<hcg::SweepRun> runs{hcg::single_run(cfg, spec.regimes.front())};
    const std::filesystem::path out = settings.at("out").get<std::string>();
    hcg::emit(runs, settings, out);

    const auto& last = runs.front().record.final_sample();
    std::cout << "round " << last.round << ": APD " << hcg::format_number(last.apd) << ", ALO "
              << hcg::format_number(last.alo) << " (" << runs.front().record.wall_seconds << " s)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hedged category game simulator"};
    app.require_subcommand(1);
    Flags run_flags;
    Flags sweep_flags;
    auto* run_cmd = app.add_subcommand("run", "single simulation run");
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over pp x regime x seed");
    add_flags(*run_cmd, run_flags, false);
    add_flags(*sweep_cmd, sweep_flags, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "error[config]: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*run_cmd) {
            return do_run(run_flags);
        }
        return do_sweep(sweep_flags);
    } catch (const hcg::ConfigError& e) {
        std::cerr << "error[config]: " << e.what() << '\n';
        return 2;
    } catch (const hcg::IoError& e) {
        std::cerr << "error[io]: " << e.what() << '\n';
        return 3;
    } catch (const hcg::UndefinedError& e) {
        std::cerr << "error[undefined]: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << '\n';
        return 1;
    }
}
