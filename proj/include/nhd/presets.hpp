#pragma once

#include "nhd/config_io.hpp"

#include <string>
#include <vector>

namespace nhd {

// Repo defaults for the figure presets (kappa = 1 units).
inline constexpr double kPresetWindow = 40.0;
inline constexpr double kPresetDt = 1e-3;
inline constexpr double kPresetDrivenDt = 1e-4;
inline constexpr int kPresetChainLength = 300;

struct ExperimentPreset {
    std::string name;
    std::string description;
    RunConfig config;
};

std::vector<std::string> preset_names();

// Throws ConfigError for an unknown name.
ExperimentPreset make_preset(const std::string& name);

// Coupling of the pseudo-decoupling figure: 1/(kappa t - 2i)^2.
CouplingSpec fig3_coupling(double kappa = 1.0);

// Drive perturbation of the driven figure: 3/(kappa t - 5i)^2.
CouplingSpec fig5_perturbation(double kappa = 1.0);

} // namespace nhd
