#pragma once

#include "nhd/continuum.hpp"
#include "nhd/coupling.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace nhd {

// Amplitudes at one instant: discrete site plus chain sites 1..N.
struct LatticeState {
    double t{0.0};
    cplx c_a{1.0, 0.0};
    std::vector<cplx> chain;

    double discrete_population() const { return std::norm(c_a); }
    double continuum_population() const;
};

// Tight-binding Fano-Anderson run. Lab frame: the omega_a term sits on c_a.
struct SimConfig {
    ContinuumSpec continuum;
    CouplingSpec coupling;
    double omega_a{0.0};
    double t_start{-40.0};
    double t_end{40.0};
    double dt{1e-3};
    int chain_length{300};
    // Coupling is evaluated on the line t - i*contour_delta.
    double contour_delta{0.0};
    // Steps between recorded samples (the last step is always recorded).
    int sample_stride{100};
    // Steps between full-state snapshots; 0 disables them.
    int snapshot_stride{0};
};

struct Sample {
    double t{0.0};
    double P_s{0.0};
    double P_c{0.0};
    cplx c_a{};

    double total() const { return P_s + P_c; }
};

struct Trajectory {
    std::vector<Sample> samples;
    std::vector<LatticeState> snapshots;
    LatticeState final_state;
    std::vector<std::string> warnings;

    double max_norm_drift() const;   // max |P_s + P_c - 1|
    double min_discrete() const;     // min P_s
    double max_total() const;        // max P_s + P_c
};

// Throws ConfigError naming the violated invariant.
void validate(const SimConfig& config);

// Fourth-order Runge-Kutta integration of the edge-site / chain equations
// starting from c_a = 1 and an empty chain.
Trajectory simulate(const SimConfig& config);

double final_discrete_population(const Trajectory& traj);

// Final c_a for each contour offset delta.
std::vector<cplx> contour_amplitude(const SimConfig& config, const std::vector<double>& deltas);

struct SpectrumPoint {
    double k{0.0};
    double omega{0.0};
    double power{0.0};
};

// Hard-wall chain eigenmodes k_j = j pi / (N + 1), j = 1..N.
std::vector<double> hard_wall_k_grid(int chain_length);

// Projection of the chain amplitudes on |k> = -sqrt(2/pi) sum_n sin(nk)|n>.
// With the hard-wall grid, sum(power) * pi/(N+1) equals P_c.
std::vector<SpectrumPoint> bloch_spectrum(const LatticeState& state, const ContinuumSpec& continuum,
                                          const std::vector<double>& k_grid);

// Share of total spectral power at omega < threshold.
double power_fraction_below(const std::vector<SpectrumPoint>& spectrum, double threshold);

// Exports. CSV columns: t,P_s,P_c,total,re_c_a,im_c_a.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_snapshots_json(std::ostream& out, const Trajectory& traj);
// CSV columns: omega,power.
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumPoint>& spectrum);

namespace detail {

// Shared integrator for both the effective and the driven models:
//   i dc_a/dt = E(t) c_a - J(t) c_1
//   i dc_1/dt = -J(t) c_a - kappa c_2
//   i dc_n/dt = -kappa (c_{n+1} + c_{n-1}),  c_{N+1} = 0
struct EdgeModel {
    std::function<cplx(double)> onsite;   // E(t)
    std::function<cplx(double)> hopping;  // J(t)
    double kappa{1.0};
};

struct RunParams {
    double t_start{0.0};
    double t_end{1.0};
    double dt{1e-3};
    int chain_length{1};
    int sample_stride{1};
    int snapshot_stride{0};
};

Trajectory integrate(const EdgeModel& model, const RunParams& params);

} // namespace detail

} // namespace nhd
