#include "nhd/errors.hpp"
#include "nhd/runner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

enum Exit { kPass = 0, kAssertion = 1, kInput = 2, kNumerical = 3 };

void print_summary(const nhd::RunSummary& s) {
    std::printf("%s (%s): P_s_final=%.6f P_c_final=%.6f max_norm_drift=%.3g\n", s.name.c_str(),
                s.kind.c_str(), s.P_s_final, s.P_c_final, s.max_norm_drift);
    for (const auto& a : s.assertions)
        std::printf("  [%s] %s = %.6g %s %.6g\n", a.passed ? "PASS" : "FAIL", a.name.c_str(), a.value,
                    a.relation.c_str(), a.threshold);
    for (const auto& w : s.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

nhd::RunConfig load_base(const std::string& source) {
    if (std::filesystem::exists(source)) return nhd::load_run_config(source);
    const auto names = nhd::preset_names();
    if (std::find(names.begin(), names.end(), source) != names.end())
        return nhd::make_preset(source).config;
    throw nhd::ConfigError("'" + source + "' is neither a config file nor a preset name");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete state coupled to a tight-binding continuum through a complex coupling"};
    app.require_subcommand(1);

    nhd::RunOptions opts;
    std::string out;
    double dt = 0.0;
    int chain_length = 0;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "Output directory for artifacts");
        cmd->add_option("--dt", dt, "Override the time step")->check(CLI::PositiveNumber);
        cmd->add_option("--chain-length", chain_length, "Override the chain length")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--snapshots", opts.snapshot_stride, "Full-state snapshot stride (steps)")
            ->check(CLI::NonNegativeNumber);
    };

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Run a named experiment preset and check it");
    preset->add_option("name", preset_name, "Preset name")->required();
    add_common(preset);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a JSON config");
    run->add_option("config", config_path, "Config file")->required();
    add_common(run);

    std::string sweep_source, param, values;
    auto* sweep = app.add_subcommand("sweep", "Scan one scalar config field");
    sweep->add_option("config", sweep_source, "Config file or preset name")->required();
    sweep->add_option("--param", param, "JSON pointer of the field, e.g. /a0")->required();
    sweep->add_option("--values", values, "a,b,c or start:stop:step")->required();
    add_common(sweep);

    app.add_subcommand("list", "List preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kInput;
    }

    opts.out_dir = out;
    if (dt > 0.0) opts.dt = dt;
    if (chain_length > 0) opts.chain_length = chain_length;

    try {
        if (app.got_subcommand("list")) {
            for (const auto& n : nhd::preset_names())
                std::printf("%-20s %s\n", n.c_str(), nhd::make_preset(n).description.c_str());
            return kPass;
        }
        if (*preset) {
            const auto s = nhd::run_preset(preset_name, opts);
            print_summary(s);
            return s.passed() ? kPass : kAssertion;
        }
        if (*run) {
            print_summary(nhd::run_config(std::filesystem::path(config_path), opts));
            return kPass;
        }
        const auto rows = nhd::sweep(load_base(sweep_source), param, nhd::parse_value_list(values), opts);
        nhd::write_sweep_csv(std::cout, rows);
        if (!rows.empty()) {
            const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
                return a.P_s_late_mean < b.P_s_late_mean;
            });
            std::fprintf(stderr, "max late-time P_s %.6f at %s = %.6g\n", best->P_s_late_mean,
                         param.c_str(), best->value);
        }
        return kPass;
    } catch (const nhd::ConfigError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kInput;
    } catch (const nhd::DomainError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kNumerical;
    }
}
