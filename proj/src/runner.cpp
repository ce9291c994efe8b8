#include "nhd/runner.hpp"

#include "nhd/errors.hpp"
#include "detail/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

namespace nhd {

using detail::fmt_double;

namespace {

namespace fs = std::filesystem;

Assertion check(std::string name, double value, std::string relation, double threshold) {
    bool ok = false;
    if (relation == "<=") ok = value <= threshold;
    else if (relation == "<") ok = value < threshold;
    else if (relation == ">=") ok = value >= threshold;
    else if (relation == ">") ok = value > threshold;
    return {std::move(name), value, std::move(relation), threshold, ok};
}

std::ofstream open_out(const fs::path& dir, const std::string& file) {
    std::ofstream out(dir / file);
    if (!out) throw ConfigError("cannot write '" + (dir / file).string() + "'");
    return out;
}

void prepare_dir(const fs::path& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw ConfigError("output directory '" + dir.string() + "' is not writable");
}

void fill_from(RunSummary& s, const Trajectory& traj) {
    s.P_s_final = traj.samples.back().P_s;
    s.P_c_final = traj.samples.back().P_c;
    s.max_norm_drift = traj.max_norm_drift();
    s.min_P_s = traj.min_discrete();
    s.max_total = traj.max_total();
    s.warnings.insert(s.warnings.end(), traj.warnings.begin(), traj.warnings.end());
}

void write_common(const fs::path& dir, const RunConfig& config, const Trajectory& traj) {
    if (dir.empty()) return;
    {
        auto out = open_out(dir, "config.json");
        out << to_json(config).dump(2) << '\n';
    }
    {
        auto out = open_out(dir, "trajectory.csv");
        write_trajectory_csv(out, traj);
    }
    if (!traj.snapshots.empty()) {
        auto out = open_out(dir, "snapshots.json");
        write_snapshots_json(out, traj);
    }
}

void write_summary(const fs::path& dir, const RunSummary& s) {
    if (dir.empty()) return;
    auto out = open_out(dir, "summary.json");
    out << s.to_json().dump(2) << '\n';
}

std::vector<SpectrumPoint> final_spectrum(const SimConfig& c, const Trajectory& traj) {
    return bloch_spectrum(traj.final_state, c.continuum, hard_wall_k_grid(c.chain_length));
}

double max_ps_deviation(const Trajectory& traj) {
    double d = 0.0;
    for (const auto& s : traj.samples) d = std::max(d, std::abs(s.P_s - 1.0));
    return d;
}

double late_mean(const Trajectory& traj) {
    const std::size_t n = traj.samples.size();
    const std::size_t from = n - std::max<std::size_t>(1, n / 4);
    double sum = 0.0;
    for (std::size_t i = from; i < n; ++i) sum += traj.samples[i].P_s;
    return sum / static_cast<double>(n - from);
}

// Shared body of run_config / run_preset. Returns trajectories it produced
// for preset-specific checks.
struct Produced {
    Trajectory traj;
    std::optional<RwaReport> rwa;
    std::vector<SpectrumPoint> spectrum;
};

Produced execute(const RunConfig& config, const RunOptions& options, RunSummary& summary,
                 bool with_rwa) {
    Produced p;
    if (const auto* sim = std::get_if<SimConfig>(&config)) {
        summary.kind = "lattice";
        p.traj = simulate(*sim);
        p.spectrum = final_spectrum(*sim, p.traj);
        if (!options.out_dir.empty()) {
            auto out = open_out(options.out_dir, "spectrum.csv");
            write_spectrum_csv(out, p.spectrum);
        }
    } else {
        const auto& drive = std::get<DriveConfig>(config);
        summary.kind = "driven";
        if (with_rwa) {
            p.rwa = compare_rwa(drive);
            p.traj = p.rwa->full;
            if (!options.out_dir.empty()) {
                auto out = open_out(options.out_dir, "rwa_compare.csv");
                write_rwa_csv(out, *p.rwa);
            }
            summary.details["rwa_max_dPs"] = p.rwa->max_dPs;
            summary.details["rwa_max_dPc"] = p.rwa->max_dPc;
            summary.details["rwa_P_s_final"] = p.rwa->rwa.samples.back().P_s;
        } else {
            p.traj = simulate_driven(drive);
        }
        p.spectrum = final_spectrum(drive.base, p.traj);
        if (!options.out_dir.empty()) {
            auto out = open_out(options.out_dir, "spectrum.csv");
            write_spectrum_csv(out, p.spectrum);
        }
    }
    fill_from(summary, p.traj);
    write_common(options.out_dir, config, p.traj);
    return p;
}

} // namespace

bool RunSummary::passed() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const Assertion& a) { return a.passed; });
}

json RunSummary::to_json() const {
    json checks = json::array();
    for (const auto& a : assertions)
        checks.push_back({{"name", a.name},
                          {"value", a.value},
                          {"relation", a.relation},
                          {"threshold", a.threshold},
                          {"passed", a.passed}});
    return {{"schema_version", kSchemaVersion},
            {"name", name},
            {"kind", kind},
            {"P_s_final", P_s_final},
            {"P_c_final", P_c_final},
            {"max_norm_drift", max_norm_drift},
            {"min_P_s", min_P_s},
            {"max_total", max_total},
            {"assertions", checks},
            {"passed", passed()},
            {"warnings", warnings},
            {"details", details}};
}

RunConfig apply_overrides(RunConfig config, const RunOptions& options) {
    auto patch = [&](SimConfig& c) {
        if (options.dt) c.dt = *options.dt;
        if (options.chain_length) c.chain_length = *options.chain_length;
        if (options.snapshot_stride > 0) c.snapshot_stride = options.snapshot_stride;
    };
    if (auto* sim = std::get_if<SimConfig>(&config)) patch(*sim);
    else patch(std::get<DriveConfig>(config).base);
    return config;
}

RunSummary run_config(const RunConfig& config, const RunOptions& options, const std::string& name) {
    prepare_dir(options.out_dir);
    const RunConfig resolved = apply_overrides(config, options);
    RunSummary summary;
    summary.name = name;
    execute(resolved, options, summary, false);
    write_summary(options.out_dir, summary);
    return summary;
}

RunSummary run_config(const std::filesystem::path& path, const RunOptions& options) {
    return run_config(load_run_config(path), options, path.stem().string());
}

RunSummary run_preset(const std::string& name, const RunOptions& options) {
    const ExperimentPreset preset = make_preset(name);
    prepare_dir(options.out_dir);
    const RunConfig config = apply_overrides(preset.config, options);

    RunSummary s;
    s.name = name;
    s.details["description"] = preset.description;
    const bool driven = std::holds_alternative<DriveConfig>(config);
    const Produced p = execute(config, options, s, driven && name != "fig6");
    auto& a = s.assertions;

    if (name == "fig3") {
        const double dev = max_ps_deviation(p.traj);
        a.push_back(check("|P_s(t_end) - 1|", std::abs(s.P_s_final - 1.0), "<=", 0.02));
        a.push_back(check("P_c(t_end)", s.P_c_final, ">", 0.01));
        a.push_back(check("P_c(t_end) / max|P_s - 1|", dev > 0 ? s.P_c_final / dev : 0.0, ">=", 0.2));
        a.push_back(check("max(P_s + P_c)", s.max_total, ">", 1.0));
    } else if (name == "fig4") {
        a.push_back(check("P_s(t_end)", s.P_s_final, "<", 0.2));
        a.push_back(check("max|P_s + P_c - 1|", s.max_norm_drift, "<=", 1e-6));
    } else if (name == "fig5") {
        a.push_back(check("|P_s(t_end) - 1|", std::abs(s.P_s_final - 1.0), "<=", 0.05));
        a.push_back(check("P_c(t_end)", s.P_c_final, ">", 0.0));
        a.push_back(check("rwa max|dP_s|", p.rwa->max_dPs, "<=", 0.05));
    } else if (name == "fig6") {
        a.push_back(check("P_s(t_end)", s.P_s_final, "<=", 0.8));
        a.push_back(check("max|P_s + P_c - 1|", s.max_norm_drift, "<=", 1e-6));
    } else if (name == "cdt_baseline") {
        a.push_back(check("min P_s", s.min_P_s, ">=", 0.99));
        a.push_back(check("rwa max|dP_s|", p.rwa->max_dPs, "<=", 0.01));
    } else if (name == "spectral_asymmetry") {
        const auto& sim = std::get<SimConfig>(config);
        const double below = power_fraction_below(p.spectrum, sim.omega_a);
        s.details["power_fraction_below_omega_a"] = below;
        s.details["power_fraction_above_omega_a"] = 1.0 - below;
        a.push_back(check("power fraction at omega < omega_a", below, ">=", 0.9));
    } else if (name == "contour_invariance") {
        const auto& sim = std::get<SimConfig>(config);
        const std::vector<double> deltas{0.0, 0.5, 1.0, 10.0};
        const auto amps = contour_amplitude(sim, deltas);
        json rows = json::array();
        for (std::size_t i = 0; i < deltas.size(); ++i)
            rows.push_back({{"delta", deltas[i]}, {"A", {amps[i].real(), amps[i].imag()}}});
        s.details["contour_amplitudes"] = rows;
        a.push_back(check("|A(0.5) - A(0)|", std::abs(amps[1] - amps[0]), "<=", 0.02));
        a.push_back(check("|A(1) - A(0)|", std::abs(amps[2] - amps[0]), "<=", 0.02));
        a.push_back(check("|A(10) - 1|", std::abs(amps[3] - 1.0), "<=", 0.02));
        for (double d : {0.0, 1.0}) {
            const cplx r = certify_zero_contour_integral(sim.coupling, d, 1e-8);
            a.push_back(check("|int f^2(theta - i " + fmt_double(d) + ")|", std::abs(r), "<=", 1e-8));
        }
        if (!options.out_dir.empty()) {
            auto out = open_out(options.out_dir, "contour.csv");
            out << "delta,re_A,im_A\n";
            for (std::size_t i = 0; i < deltas.size(); ++i)
                out << fmt_double(deltas[i]) << ',' << fmt_double(amps[i].real()) << ','
                    << fmt_double(amps[i].imag()) << '\n';
        }
    } else if (name == "weak_coupling_check") {
        const auto& sim = std::get<SimConfig>(config);
        const auto* chain = sim.continuum.chain_params();
        const auto constants = decay_constants(sim.continuum, sim.omega_a);
        const double markov = markov_final_population(constants, sim.coupling);
        const cplx memory = memory_integral(sim.continuum, sim.omega_a, 400.0);
        const cplx rate(constants.R, -constants.Delta);
        const double r_expected = chain->kappa1 * chain->kappa1 / chain->kappa;
        s.details["P_s_markov"] = markov;
        s.details["R"] = constants.R;
        s.details["Delta"] = constants.Delta;
        s.details["memory_integral"] = {memory.real(), memory.imag()};
        a.push_back(check("|P_s - P_markov| / (1 - P_s)",
                          std::abs(s.P_s_final - markov) / (1.0 - s.P_s_final), "<=", 0.05));
        a.push_back(check("|int Phi - (R - i Delta)| / |R - i Delta|",
                          std::abs(memory - rate) / std::abs(rate), "<=", 0.01));
        if (sim.omega_a == 0.0)
            a.push_back(check("|R - kappa1^2/kappa| / (kappa1^2/kappa)",
                              std::abs(constants.R - r_expected) / r_expected, "<=", 0.005));
    }
    write_summary(options.out_dir, s);
    return s;
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    auto to_number = [&](const std::string& tok) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("--values: '" + tok + "' is not a number");
        }
    };
    if (text.find_first_not_of(" \t") == std::string::npos) return out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
        if (parts.size() != 3) throw ParseError("--values: range must be start:stop:step");
        const double start = to_number(parts[0]), stop = to_number(parts[1]), step = to_number(parts[2]);
        if (!(step > 0.0) || stop < start) throw ParseError("--values: empty or invalid range");
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 0.5));
        for (long long i = 0; i <= count; ++i) out.push_back(start + step * static_cast<double>(i));
        return out;
    }
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(to_number(tok));
    return out;
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::string& path,
                            const std::vector<double>& values, const RunOptions& options) {
    const json doc = to_json(apply_overrides(base, options));
    json::json_pointer ptr;
    try {
        ptr = json::json_pointer(path);
    } catch (const json::exception& e) {
        throw ConfigError("--param '" + path + "': " + e.what());
    }
    if (!doc.contains(ptr) || !doc.at(ptr).is_number())
        throw ConfigError("--param '" + path + "' does not address a scalar field");

    // Validate every row up front so a bad value fails before any run starts.
    std::vector<RunConfig> configs;
    configs.reserve(values.size());
    for (double v : values) {
        json row = doc;
        if (row.at(ptr).is_number_integer()) {
            if (v != std::floor(v)) throw ConfigError("--param '" + path + "' expects integers");
            row[ptr] = static_cast<long long>(v);
        } else {
            row[ptr] = v;
        }
        configs.push_back(run_config_from_json(row));
    }

    if (!options.out_dir.empty()) prepare_dir(options.out_dir / "rows");

    auto run_row = [&](std::size_t i) {
        SweepRow row;
        row.value = values[i];
        Trajectory traj;
        if (const auto* sim = std::get_if<SimConfig>(&configs[i])) {
            traj = simulate(*sim);
            if (sim->coupling.real_axis_pole_form()) {
                const auto k = decay_constants(sim->continuum, sim->omega_a);
                row.P_s_markov = markov_final_population(k, sim->coupling);
            }
        } else {
            traj = simulate_driven(std::get<DriveConfig>(configs[i]));
        }
        row.P_s_final = traj.samples.back().P_s;
        row.P_c_final = traj.samples.back().P_c;
        row.P_s_late_mean = late_mean(traj);
        if (!options.out_dir.empty()) {
            char name[32];
            std::snprintf(name, sizeof name, "row_%04zu.csv", i);
            auto out = open_out(options.out_dir / "rows", name);
            write_trajectory_csv(out, traj);
        }
        return row;
    };

    std::vector<SweepRow> rows(values.size());
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < values.size(); begin += workers) {
        const std::size_t end = std::min(values.size(), begin + workers);
        std::vector<std::future<SweepRow>> batch;
        for (std::size_t i = begin; i < end; ++i)
            batch.push_back(std::async(std::launch::async, run_row, i));
        for (std::size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
    }

    if (!options.out_dir.empty()) {
        auto out = open_out(options.out_dir, "sweep.csv");
        write_sweep_csv(out, rows);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "value,P_s_final,P_c_final,P_s_late_mean,P_s_markov\n";
    for (const auto& r : rows) {
        out << fmt_double(r.value) << ',' << fmt_double(r.P_s_final) << ','
            << fmt_double(r.P_c_final) << ',' << fmt_double(r.P_s_late_mean) << ',';
        if (r.P_s_markov) out << fmt_double(*r.P_s_markov);
        out << '\n';
    }
}

} // namespace nhd
