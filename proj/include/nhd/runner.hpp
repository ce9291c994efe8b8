#pragma once

#include "nhd/config_io.hpp"
#include "nhd/presets.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nhd {

struct RunOptions {
    // Artifacts are written here when non-empty (created if missing).
    std::filesystem::path out_dir;
    std::optional<double> dt;
    std::optional<int> chain_length;
    int snapshot_stride{0};
};

struct Assertion {
    std::string name;
    double value{0.0};
    std::string relation; // "<=", "<", ">=", ">"
    double threshold{0.0};
    bool passed{false};
};

struct RunSummary {
    std::string name;
    std::string kind;
    double P_s_final{0.0};
    double P_c_final{0.0};
    double max_norm_drift{0.0};
    double min_P_s{0.0};
    double max_total{0.0};
    std::vector<Assertion> assertions;
    std::vector<std::string> warnings;
    json details = json::object();

    bool passed() const;
    json to_json() const;
};

// Apply --dt / --chain-length / --snapshots overrides.
RunConfig apply_overrides(RunConfig config, const RunOptions& options);

// Runs the preset, evaluates its tolerance-tagged assertions and writes
// config.json, trajectory.csv, summary.json (+ spectrum/rwa/contour CSVs).
RunSummary run_preset(const std::string& name, const RunOptions& options);

// Same artifacts as run_preset, without assertions.
RunSummary run_config(const RunConfig& config, const RunOptions& options,
                      const std::string& name = "config");
RunSummary run_config(const std::filesystem::path& path, const RunOptions& options);

struct SweepRow {
    double value{0.0};
    double P_s_final{0.0};
    double P_c_final{0.0};
    // Mean P_s over the last quarter of the window (averages out micromotion).
    double P_s_late_mean{0.0};
    // Markovian prediction, lattice runs with a pole-expressible coupling only.
    std::optional<double> P_s_markov;
};

// "a,b,c" or "start:stop:step" (inclusive of stop within half a step).
std::vector<double> parse_value_list(const std::string& text);

// One independent run per value with the scalar at JSON pointer `path`
// replaced. Rows come back in input order.
std::vector<SweepRow> sweep(const RunConfig& base, const std::string& path,
                            const std::vector<double>& values, const RunOptions& options);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

} // namespace nhd
