#pragma once

#include "nhd/bessel.hpp"
#include "nhd/lattice.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace nhd {

// Edge site driven by [omega_a + A(t) cos(Omega t + phase)] with
// A(t) = Omega [a0 + dA(t)] and static Hermitian hopping kappa1 (taken from
// base.continuum). base.coupling is ignored.
struct DriveConfig {
    SimConfig base;
    double a0{kBesselJ0FirstZero};
    CouplingSpec delta_a;
    double drive_frequency{8.0};
    // Cosine phase at t = 0.
    double drive_phase{0.0};
    // Static offset of the rotating-wave comparison run; unset means a0.
    std::optional<double> rwa_a0;
};

// Throws ConfigError naming the violated invariant. Returns soft warnings
// (e.g. Omega below 8x the largest competing rate).
std::vector<std::string> validate(const DriveConfig& config);

Trajectory simulate_driven(const DriveConfig& config);

// Effective model with f(t) = J0(A(t)/Omega) on the same window and grid
// (A0 replaced by rwa_a0 when set).
SimConfig rwa_config(const DriveConfig& config);

struct RwaRow {
    double t{0.0};
    double Ps_full{0.0};
    double Ps_rwa{0.0};
    double Pc_full{0.0};
    double Pc_rwa{0.0};
};

struct RwaReport {
    std::vector<RwaRow> rows;
    double max_dPs{0.0};
    double max_dPc{0.0};
    Trajectory full;
    Trajectory rwa;
};

// Throws ConfigError if the sample times of the two runs differ.
RwaReport compare_trajectories(Trajectory full, Trajectory rwa);

RwaReport compare_rwa(const DriveConfig& config);

// CSV columns: t,Ps_full,Ps_rwa,Pc_full,Pc_rwa.
void write_rwa_csv(std::ostream& out, const RwaReport& report);

} // namespace nhd
