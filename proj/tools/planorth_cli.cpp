// Experiment runner: picks an experiment, merges config layers
// (built-in defaults < config file < command-line flags), executes,
// and prints a summary plus the artifact paths.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "planorth/experiments.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

planorth::Json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw planorth::ConfigError("cannot open config " + path);
    try {
        return planorth::Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw planorth::ConfigError("config " + path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthonormal polynomial experiments for planar measures"};
    std::string experiment, config_path, degrees_arg, out_dir, probe_arg;
    int bits = -1;
    long seed = -1;
    app.add_option("--experiment", experiment,
                   "one of: disk-exact, lake-rates, ps-report, pentagon, "
                   "disk-hole-zeros, sector, toeplitz, circle-vs-area");
    app.add_option("--config", config_path, "JSON config file (merged over "
                   "the experiment's defaults)");
    app.add_option("--bits", bits, "working precision in bits");
    app.add_option("--degrees", degrees_arg,
                   "comma-separated ascending degree list, e.g. 40,60,80");
    app.add_option("--out", out_dir, "output directory root");
    app.add_option("--probe", probe_arg,
                   "probe points as re,im;re,im (decimal strings ok)");
    app.add_option("--seed", seed,
                   "echoed into the summary; experiments are deterministic");
    CLI11_PARSE(app, argc, argv);

    try {
        planorth::Json user;
        if (!config_path.empty()) user = load_config_file(config_path);
        std::string name = experiment;
        if (name.empty() && user.contains("experiment") &&
            user["experiment"].is_string())
            name = user["experiment"].get<std::string>();
        if (name.empty())
            throw planorth::ConfigError(
                "no experiment selected: pass --experiment or put "
                "\"experiment\" in the config file");

        planorth::Json cfg = planorth::default_experiment_config(name);
        if (!user.is_null()) cfg = planorth::merge_config(cfg, user);
        cfg["experiment"] = name;
        if (bits > 0) cfg["precision_bits"] = bits;
        if (!degrees_arg.empty()) {
            planorth::Json ds = planorth::Json::array();
            for (const auto& tok : split(degrees_arg, ','))
                try {
                    ds.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw planorth::ConfigError("--degrees: bad entry \"" +
                                                tok + "\"");
                }
            cfg["degrees"] = ds;
        }
        if (!out_dir.empty()) cfg["output_dir"] = out_dir;
        if (!probe_arg.empty()) {
            planorth::Json ps = planorth::Json::array();
            for (const auto& pt : split(probe_arg, ';')) {
                const auto parts = split(pt, ',');
                if (parts.size() != 2)
                    throw planorth::ConfigError("--probe: expected re,im;...");
                ps.push_back(planorth::Json::array({parts[0], parts[1]}));
            }
            cfg["probe_points"] = ps;
        }
        if (seed >= 0) cfg["seed"] = seed;

        planorth::ExperimentOutcome outcome = planorth::run_experiment(cfg);
        outcome.summary["seed"] = cfg["seed"];
        std::cout << outcome.summary.dump(2) << "\n";
        for (const auto& a : outcome.artifacts)
            std::cout << "wrote " << a << "\n";
        return 0;
    } catch (const planorth::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(planorth::ErrorCategory::numeric);
    }
}
