#include "nhd/driven.hpp"

#include "nhd/errors.hpp"
#include "detail/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace nhd {

using detail::fmt_double;

namespace {

double peak_drive_amplitude(const DriveConfig& c) {
    double peak = 0.0;
    constexpr int kProbe = 4000;
    for (int i = 0; i <= kProbe; ++i) {
        const double t = c.base.t_start + (c.base.t_end - c.base.t_start) * i / kProbe;
        peak = std::max(peak, std::abs(c.a0 + c.delta_a(cplx(t, 0.0))));
    }
    return c.drive_frequency * peak;
}

} // namespace

std::vector<std::string> validate(const DriveConfig& config) {
    SimConfig plain = config.base;
    plain.coupling = CouplingSpec::zero();
    plain.contour_delta = 0.0;
    validate(plain);
    const auto* chain = plain.continuum.chain_params();

    if (config.delta_a.as<Sampled>()) {
        const auto* s = config.delta_a.as<Sampled>();
        const double end = s->start + s->step * static_cast<double>(s->values.size() - 1);
        if (s->start > plain.t_start + 1e-12 || end < plain.t_end - 1e-12)
            throw ConfigError("sampled delta_a does not cover [t_start, t_end]");
    }
    const double omega = config.drive_frequency;
    if (!(omega > 0.0)) throw ConfigError("drive_frequency must be > 0");
    const double competing = std::max(chain->kappa1, std::abs(plain.omega_a));
    if (omega < 4.0 * competing)
        throw ConfigError("rotating-wave regime violated: drive_frequency " + fmt_double(omega) +
                          " must be >= 4 * max(kappa1, |omega_a|) = " + fmt_double(4.0 * competing));
    const double dt_limit = 2.0 * std::numbers::pi / (40.0 * omega);
    if (plain.dt > dt_limit)
        throw ConfigError("drive resolution violated: dt " + fmt_double(plain.dt) +
                          " must be <= 2 pi / (40 drive_frequency) = " + fmt_double(dt_limit));
    const double rate = std::max({std::abs(plain.omega_a) + peak_drive_amplitude(config),
                                  2.0 * chain->kappa, chain->kappa1});
    if (plain.dt * rate > 0.1)
        throw ConfigError("step budget violated: dt * max(|omega_a| + max|A|, 2 kappa, kappa1) = " +
                          fmt_double(plain.dt * rate) + " exceeds 0.1");

    std::vector<std::string> warnings;
    if (omega < 8.0 * competing) {
        warnings.push_back("drive_frequency " + fmt_double(omega) +
                           " is below 8 * max(kappa1, |omega_a|); rotating-wave corrections may be visible");
    }
    return warnings;
}

Trajectory simulate_driven(const DriveConfig& config) {
    auto warnings = validate(config);
    const auto* chain = config.base.continuum.chain_params();
    const double omega = config.drive_frequency;
    const double phase = config.drive_phase;
    const double a0 = config.a0;
    const double omega_a = config.base.omega_a;
    const CouplingSpec delta_a = config.delta_a;
    const cplx kappa1(chain->kappa1, 0.0);

    detail::EdgeModel model;
    model.kappa = chain->kappa;
    model.onsite = [=](double t) {
        const cplx amplitude = omega * (a0 + delta_a(cplx(t, 0.0)));
        return omega_a + amplitude * std::cos(omega * t + phase);
    };
    model.hopping = [kappa1](double) { return kappa1; };

    const auto& b = config.base;
    detail::RunParams params{b.t_start, b.t_end, b.dt, b.chain_length, b.sample_stride,
                             b.snapshot_stride};
    auto traj = detail::integrate(model, params);
    traj.warnings.insert(traj.warnings.begin(), warnings.begin(), warnings.end());
    return traj;
}

SimConfig rwa_config(const DriveConfig& config) {
    SimConfig c = config.base;
    c.coupling = CouplingSpec::bessel(config.rwa_a0.value_or(config.a0), config.delta_a,
                                      config.drive_frequency);
    c.contour_delta = 0.0;
    return c;
}

RwaReport compare_trajectories(Trajectory full, Trajectory rwa) {
    if (full.samples.size() != rwa.samples.size())
        throw ConfigError("rwa comparison: runs have different sample counts");
    RwaReport report;
    report.rows.reserve(full.samples.size());
    for (std::size_t i = 0; i < full.samples.size(); ++i) {
        const auto& f = full.samples[i];
        const auto& r = rwa.samples[i];
        if (std::abs(f.t - r.t) > 1e-9 * (1.0 + std::abs(f.t)))
            throw ConfigError("rwa comparison: sample times differ (mismatched windows)");
        report.rows.push_back({f.t, f.P_s, r.P_s, f.P_c, r.P_c});
        report.max_dPs = std::max(report.max_dPs, std::abs(f.P_s - r.P_s));
        report.max_dPc = std::max(report.max_dPc, std::abs(f.P_c - r.P_c));
    }
    report.full = std::move(full);
    report.rwa = std::move(rwa);
    return report;
}

RwaReport compare_rwa(const DriveConfig& config) {
    return compare_trajectories(simulate_driven(config), simulate(rwa_config(config)));
}

void write_rwa_csv(std::ostream& out, const RwaReport& report) {
    out << "t,Ps_full,Ps_rwa,Pc_full,Pc_rwa\n";
    for (const auto& r : report.rows) {
        out << fmt_double(r.t) << ',' << fmt_double(r.Ps_full) << ',' << fmt_double(r.Ps_rwa) << ','
            << fmt_double(r.Pc_full) << ',' << fmt_double(r.Pc_rwa) << '\n';
    }
}

} // namespace nhd
