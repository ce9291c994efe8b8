#include <doctest.h>

#include "nhd/continuum.hpp"
#include "nhd/coupling.hpp"
#include "nhd/driven.hpp"
#include "nhd/lattice.hpp"
#include "nhd/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace nhd;

namespace {

// Random pole expansion with every pole in the upper half-plane and decay of
// at least 1/t^2.
CouplingSpec random_upper_poles(std::mt19937& rng) {
    std::uniform_real_distribution<double> re(-3, 3), height(1, 4), amp(-1, 1);
    std::uniform_int_distribution<int> count(1, 3), order(2, 3);
    std::vector<PoleTerm> terms;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) terms.push_back({cplx(amp(rng), amp(rng)), cplx(re(rng), height(rng)), order(rng)});
    return CouplingSpec::poles(terms);
}

UniformGrid sample_real(const CouplingSpec& f, double span, int n) {
    UniformGrid g;
    g.start = -span / 2;
    g.step = span / (n - 1);
    for (int i = 0; i < n; ++i) g.values.push_back(eval_coupling(f, g.time(i)).real());
    return g;
}

double interior_max_error(const std::vector<double>& a, const std::function<double(std::size_t)>& b) {
    double err = 0;
    for (std::size_t i = a.size() / 10; i < 9 * a.size() / 10; ++i) err = std::max(err, std::abs(a[i] - b(i)));
    return err;
}

double peak_of(const std::vector<double>& v) {
    double p = 0;
    for (double x : v) p = std::max(p, std::abs(x));
    return p;
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("real part only agrees with the real part for random expansions") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> t(-20, 20);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_upper_poles(rng);
        const auto re = CouplingSpec::real_part_of(f);
        for (int k = 0; k < 10; ++k) {
            const double x = t(rng);
            CHECK(eval_coupling(re, x) == cplx(eval_coupling(f, x).real(), 0.0));
        }
    }
}

TEST_CASE("effective time vanishes for upper half-plane expansions") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_upper_poles(rng);
        const double tol = 1e-9;
        const auto a = effective_interaction_time(f, {-100, 100}, tol);
        CHECK(std::abs(a.value) < tol);
        CHECK(a.quadrature_error_estimate >= 0.0);
    }
}

TEST_CASE("effective time is translation invariant and quadratic") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto re = CouplingSpec::real_part_of(random_upper_poles(rng));
        const cplx a = effective_interaction_time(re, {-100, 100}, 1e-10).value;
        const cplx b = effective_interaction_time(shifted(re, 4.5), {-100, 100}, 1e-10).value;
        const cplx c = effective_interaction_time(scaled(re, 3.0), {-100, 100}, 1e-10).value;
        CHECK(std::abs(a - b) < 1e-8);
        CHECK(std::abs(c - 9.0 * a) < 1e-8);
    }
}

TEST_CASE("hilbert partner recovers imaginary parts of random expansions") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_upper_poles(rng);
        const auto poles = f.singularities().value();
        double top = 0;
        for (auto p : poles) top = std::max(top, std::abs(p.imag()));
        const auto g = sample_real(f, 100 * top, 4096);
        const auto h = hilbert_partner(g);
        std::vector<double> im;
        for (std::size_t i = 0; i < g.values.size(); ++i) im.push_back(eval_coupling(f, g.time(i)).imag());
        const double err = interior_max_error(h.values, [&](std::size_t i) { return im[i]; });
        CHECK(err <= 1e-3 * std::max(peak_of(im), peak_of(g.values)));
    }
}

TEST_CASE("hilbert partner twice negates the input") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_upper_poles(rng);
        const auto g = sample_real(f, 400, 4096);
        const auto twice = hilbert_partner(hilbert_partner(g));
        const double err = interior_max_error(twice.values, [&](std::size_t i) { return -g.values[i]; });
        CHECK(err <= 1e-3 * peak_of(g.values));
    }
}

TEST_CASE("contour certificate is independent of the offset") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_upper_poles(rng);
        const auto poles = f.singularities().value();
        double lowest = 1e9;
        for (auto p : poles) lowest = std::min(lowest, p.imag());
        for (double frac : {0.0, 0.3, 0.8}) {
            CHECK(std::abs(certify_zero_contour_integral(f, frac * lowest, 1e-8)) <= 1e-8);
        }
    }
}

TEST_CASE("decay rate scales with the square of kappa1") {
    for (double wa : {0.0, 0.9, -1.5}) {
        const double r1 = decay_constants(ContinuumSpec::chain(1, 0.3), wa).R;
        const double r2 = decay_constants(ContinuumSpec::chain(1, 0.9), wa).R;
        CHECK(r2 == doctest::Approx(9.0 * r1).epsilon(1e-12));
    }
}

TEST_CASE("markov final population is translation invariant") {
    std::mt19937 rng(17);
    const auto k = decay_constants(ContinuumSpec::chain(1, 0.4), 0.3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = CouplingSpec::real_part_of(random_upper_poles(rng));
        CHECK(markov_final_population(k, f) == doctest::Approx(markov_final_population(k, shifted(f, -7.25))).epsilon(1e-9));
    }
}

TEST_CASE("hermitian runs conserve the norm") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 4; ++trial) {
        SimConfig c;
        c.continuum = ContinuumSpec::chain(1, 1.5);
        c.coupling = CouplingSpec::real_part_of(random_upper_poles(rng));
        c.omega_a = 0.5 * trial - 0.7;
        c.t_start = -20;
        c.t_end = 20;
        c.chain_length = 100;
        const auto traj = simulate(c);
        CHECK(traj.max_norm_drift() <= 1e-6);
    }
}

TEST_CASE("pseudo decoupling holds across a battery of pole couplings") {
    // kind 1: two simple poles with cancelling residues, 2 and 3: one pole of
    // that order. Amplitudes keep the pulse area roughly fixed as h grows.
    for (int kind : {1, 2, 3}) {
        for (double h : {1.0, 2.0, 5.0}) {
            for (double kappa1 : {1.0, 2.0}) {
                SimConfig c;
                c.continuum = ContinuumSpec::chain(1, kappa1);
                if (kind == 1)
                    c.coupling = CouplingSpec::poles({{cplx(0, 1), cplx(0, h), 1}, {cplx(0, -1), cplx(0, 2 * h), 1}});
                else
                    c.coupling = CouplingSpec::single_pole(std::pow(h, kind - 1), cplx(0, h), kind);
                // window long enough that |f(t_start)| <= 1e-3 of the peak
                const double reach = kind == 1 ? h * std::sqrt(2000.0) : h * std::pow(1000.0, 1.0 / kind);
                c.t_end = std::max(40.0, std::ceil(reach));
                c.t_start = -c.t_end;
                c.chain_length = static_cast<int>(4 * c.t_end + 20);
                c.dt = 2e-3;
                c.sample_stride = 1000;
                CAPTURE(kind);
                CAPTURE(h);
                CAPTURE(kappa1);
                const auto traj = simulate(c);
                CHECK(traj.warnings.empty());
                CHECK(std::abs(traj.samples.back().P_s - 1.0) <= 0.02);
                CHECK(traj.samples.back().P_c > 0.2);
            }
        }
    }
}

TEST_CASE("lattice convergence at the pseudo-decoupling preset") {
    const auto base = std::get<SimConfig>(make_preset("fig3").config);
    const double ps = simulate(base).samples.back().P_s;
    auto half = base;
    half.dt /= 2;
    half.sample_stride *= 2;
    auto longer = base;
    longer.chain_length *= 2;
    CHECK(std::abs(simulate(half).samples.back().P_s - ps) < 1e-6);
    CHECK(std::abs(simulate(longer).samples.back().P_s - ps) < 1e-4);
}

}

TEST_SUITE("driven_properties") {

TEST_CASE("real drive envelopes conserve the norm at the hermitian preset") {
    const auto d = std::get<DriveConfig>(make_preset("fig6").config);
    CHECK(simulate_driven(d).max_norm_drift() <= 1e-6);
}

TEST_CASE("drive phase does not matter at the driven preset") {
    const auto d = std::get<DriveConfig>(make_preset("fig5").config);
    auto shifted_phase = d;
    shifted_phase.drive_phase = std::numbers::pi / 2;
    const double a = simulate_driven(d).samples.back().P_s;
    const double b = simulate_driven(shifted_phase).samples.back().P_s;
    MESSAGE("P_s(t_end) at phase 0: " << a << ", at phase pi/2: " << b);
    CHECK(std::abs(a - b) <= 0.02);
}

TEST_CASE("rotating-wave error shrinks at a faster drive") {
    const auto d = std::get<DriveConfig>(make_preset("fig5").config);
    auto fast = d;
    fast.drive_frequency = 16;
    const double slow_dev = compare_rwa(d).max_dPs;
    const double fast_dev = compare_rwa(fast).max_dPs;
    MESSAGE("max |dP_s| at Omega 8: " << slow_dev << ", at Omega 16: " << fast_dev);
    CHECK(fast_dev < slow_dev);
}

TEST_CASE("driven step halving") {
    const auto d = std::get<DriveConfig>(make_preset("fig5").config);
    auto half = d;
    half.base.dt /= 2;
    half.base.sample_stride *= 2;
    CHECK(std::abs(simulate_driven(half).samples.back().P_s - simulate_driven(d).samples.back().P_s) < 1e-5);
}

}
