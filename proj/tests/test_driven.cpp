#include <doctest.h>

#include "nhd/driven.hpp"
#include "nhd/errors.hpp"
#include "nhd/presets.hpp"
#include "oracles.hpp"

#include <cmath>
#include <sstream>

using namespace nhd;

namespace {

DriveConfig short_drive(double kappa1, CouplingSpec delta_a) {
    DriveConfig d;
    d.base.continuum = ContinuumSpec::chain(1, kappa1);
    d.base.t_start = -15;
    d.base.t_end = 15;
    d.base.dt = 1e-4;
    d.base.chain_length = 80;
    d.base.sample_stride = 500;
    d.delta_a = std::move(delta_a);
    return d;
}

} // namespace

TEST_SUITE("driven") {

TEST_CASE("coherent destruction of tunneling at the J0 zero") {
    auto d = short_drive(0.25, CouplingSpec::zero());
    d.a0 = 2.404826;
    const auto traj = simulate_driven(d);
    CHECK(traj.min_discrete() >= 0.99);
    CHECK(traj.max_norm_drift() <= 1e-6);
}

TEST_CASE("away from the zero the site decays") {
    auto d = short_drive(0.5, CouplingSpec::zero());
    d.a0 = 1.0;
    CHECK(simulate_driven(d).samples.back().P_s < 0.5);
}

TEST_CASE("real drive envelopes conserve the norm") {
    auto d = short_drive(1.0, CouplingSpec::real_part_of(fig5_perturbation()));
    d.a0 = 2.33;
    const auto traj = simulate_driven(d);
    CHECK(traj.max_norm_drift() <= 1e-6);
}

TEST_CASE("complex drive envelopes break norm conservation") {
    auto d = short_drive(1.0, fig5_perturbation());
    d.a0 = 2.33;
    CHECK(simulate_driven(d).max_norm_drift() > 1e-3);
}

TEST_CASE("drive without coupling to the chain only acquires a phase") {
    // kappa1 -> 0 limit: c_a = exp(-i int [omega_a + A cos(Omega t)] dt)
    auto d = short_drive(1e-12, CouplingSpec::zero());
    d.a0 = 1.3;
    d.base.omega_a = 0.4;
    d.drive_phase = 0.7;
    const auto traj = simulate_driven(d);
    const double t0 = d.base.t_start, t1 = d.base.t_end, w = d.drive_frequency;
    const double phase = 0.4 * (t1 - t0) + 1.3 * (std::sin(w * t1 + 0.7) - std::sin(w * t0 + 0.7));
    CHECK(std::abs(traj.final_state.c_a - std::polar(1.0, -phase)) < 1e-8);
}

TEST_CASE("rotating-wave comparison at the J0 zero") {
    auto d = short_drive(0.25, CouplingSpec::zero());
    d.a0 = kBesselJ0FirstZero;
    const auto report = compare_rwa(d);
    CHECK(report.max_dPs <= 0.01);
    CHECK(report.rows.size() == report.full.samples.size());
    CHECK(report.rwa.samples.back().P_s >= 0.99);
}

TEST_CASE("rotating-wave config mirrors the drive") {
    auto d = short_drive(2.0, fig5_perturbation());
    d.a0 = 2.33;
    const auto c = rwa_config(d);
    CHECK(c.dt == d.base.dt);
    CHECK(c.t_start == d.base.t_start);
    const auto* b = c.coupling.as<BesselEnvelope>();
    REQUIRE(b != nullptr);
    CHECK(b->base == 2.33);
    CHECK(b->omega == d.drive_frequency);
    d.rwa_a0 = kBesselJ0FirstZero;
    CHECK(rwa_config(d).coupling.as<BesselEnvelope>()->base == kBesselJ0FirstZero);
    // f = J0(A0 + dA) on the real axis
    const cplx expected = oracle::bessel_j0(kBesselJ0FirstZero + eval_coupling(fig5_perturbation(), 1.5));
    CHECK(std::abs(eval_coupling(rwa_config(d).coupling, 1.5) - expected) < 1e-10);
}

TEST_CASE("mismatched windows are rejected") {
    auto a = short_drive(0.25, CouplingSpec::zero());
    auto b = a;
    b.base.t_end = 14;
    b.base.chain_length = 80;
    CHECK_THROWS_AS(compare_trajectories(simulate_driven(a), simulate_driven(b)), ConfigError);
}

TEST_CASE("drive validation") {
    auto d = short_drive(2.0, CouplingSpec::zero());
    d.drive_frequency = 7.0;
    CHECK_THROWS_AS(validate(d), ConfigError);
    d.drive_frequency = 8.0;
    CHECK(validate(d).size() == 1);
    d.drive_frequency = 16.0;
    CHECK(validate(d).empty());
    d.base.dt = 0.011;
    try {
        validate(d);
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("drive resolution") != std::string::npos);
    }
    d = short_drive(2.0, CouplingSpec::zero());
    d.base.chain_length = 60;
    CHECK_THROWS_AS(validate(d), ConfigError);
}

TEST_CASE("rwa csv columns") {
    auto d = short_drive(0.25, CouplingSpec::zero());
    std::ostringstream out;
    write_rwa_csv(out, compare_rwa(d));
    CHECK(out.str().rfind("t,Ps_full,Ps_rwa,Pc_full,Pc_rwa\n", 0) == 0);
}

}
