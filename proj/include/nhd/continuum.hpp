#pragma once

#include "nhd/coupling.hpp"

#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nhd {

// Semi-infinite tight-binding chain with hopping kappa, attached to the
// discrete state through kappa1. Band: [-2 kappa, 2 kappa].
struct TightBindingChain {
    double kappa{1.0};
    double kappa1{1.0};
};

// |g(omega)|^2 on an increasing omega grid, linearly interpolated.
struct TabulatedDensity {
    std::vector<double> omega;
    std::vector<double> g_squared;
};

class ContinuumSpec {
public:
    using Variant = std::variant<TightBindingChain, TabulatedDensity>;

    ContinuumSpec() : ContinuumSpec(TightBindingChain{}) {}
    explicit ContinuumSpec(Variant v);

    static ContinuumSpec chain(double kappa, double kappa1) {
        return ContinuumSpec(TightBindingChain{kappa, kappa1});
    }
    static ContinuumSpec tabulated(std::vector<double> omega, std::vector<double> g_squared);
    // Two-column CSV (omega, g_squared); '#' comments and a header row allowed.
    static ContinuumSpec from_csv(const std::string& path);

    const Variant& variant() const { return v_; }
    const TightBindingChain* chain_params() const { return std::get_if<TightBindingChain>(&v_); }

    std::pair<double, double> band() const;

    // |g(omega)|^2, zero outside the band.
    double spectral_density(double omega) const;

private:
    Variant v_;
};

struct MarkovConstants {
    double R{0.0};
    double Delta{0.0};
    double omega_a{0.0};
    // Estimated absolute error of Delta (tabulated densities only).
    double delta_error_estimate{0.0};
    std::string warning;
};

// v(omega) = sqrt(|g(omega)|^2); for the chain
// sqrt(1/2pi) (kappa1/kappa) (4 kappa^2 - omega^2)^(1/4).
double spectral_coupling(const ContinuumSpec& spec, double omega);

// Phi(tau) = int |g|^2 exp[-i (omega - omega_a) tau] d omega.
// `panels` is the minimum number of k-space (or per-table) panels.
cplx memory_function(const ContinuumSpec& spec, double omega_a, double tau, int panels = 4096);

// R = pi |g(omega_a)|^2 and Delta = P int |g|^2 / (omega - omega_a).
MarkovConstants decay_constants(const ContinuumSpec& spec, double omega_a);

// Numerical int_0^horizon Phi(tau) d tau, the quantity R - i Delta should
// reproduce. Used as an independent check of decay_constants.
cplx memory_integral(const ContinuumSpec& spec, double omega_a, double horizon);

// exp{-(R - i Delta) I} for a given interaction integral I = int f^2.
cplx markov_amplitude(const MarkovConstants& constants, cplx interaction_integral);

// c_a(t) = exp{-(R - i Delta) int_{-inf}^t f^2}. Pole-expressible couplings
// get an analytic tail before window_start; others start at window_start.
cplx markov_amplitude(const MarkovConstants& constants, const CouplingSpec& coupling, double t,
                      double window_start, double tolerance = 1e-10);

// P_s = exp{-2 Re[(R - i Delta) A]} with A from effective_interaction_time.
double markov_final_population(const MarkovConstants& constants, const CouplingSpec& coupling,
                               std::pair<double, double> window = {-1.0e3, 1.0e3},
                               double tolerance = 1e-9);

} // namespace nhd
