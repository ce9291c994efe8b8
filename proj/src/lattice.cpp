#include "nhd/lattice.hpp"

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

constexpr double kNormLimit = 1e6;
constexpr double kStepBudget = 0.1;

double continuum_norm(const std::vector<cplx>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i) s += std::norm(y[i]);
    return s;
}

void check_contour(const CouplingSpec& coupling, double delta) {
    const auto poles = coupling.singularities();
    if (!poles) {
        if (delta > 0.0)
            throw InvalidContourError("sampled coupling cannot be continued off the real axis");
        return;
    }
    for (const cplx& p : *poles)
        if (p.imag() <= 0.0 && p.imag() >= -delta)
            throw InvalidContourError("coupling pole at (" + fmt_double(p.real()) + ", " +
                                      fmt_double(p.imag()) +
                                      ") lies between the real axis and the contour line");
}

double peak_coupling(const CouplingSpec& coupling, double t0, double t1, double delta) {
    double peak = 0.0;
    constexpr int kProbe = 4000;
    for (int i = 0; i <= kProbe; ++i) {
        const double t = t0 + (t1 - t0) * i / kProbe;
        peak = std::max(peak, std::abs(coupling(cplx(t, -delta))));
    }
    if (auto poles = coupling.singularities()) {
        for (const cplx& p : *poles)
            if (p.real() > t0 && p.real() < t1)
                peak = std::max(peak, std::abs(coupling(cplx(p.real(), -delta))));
    }
    return peak;
}

} // namespace

double LatticeState::continuum_population() const {
    double s = 0.0;
    for (const cplx& c : chain) s += std::norm(c);
    return s;
}

double Trajectory::max_norm_drift() const {
    double d = 0.0;
    for (const auto& s : samples) d = std::max(d, std::abs(s.total() - 1.0));
    return d;
}

double Trajectory::min_discrete() const {
    double m = samples.empty() ? 0.0 : samples.front().P_s;
    for (const auto& s : samples) m = std::min(m, s.P_s);
    return m;
}

double Trajectory::max_total() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, s.total());
    return m;
}

void validate(const SimConfig& config) {
    const auto* chain = config.continuum.chain_params();
    if (!chain) throw ConfigError("simulation requires a tight_binding_chain continuum");
    if (!(config.t_end > config.t_start)) throw ConfigError("t_end must exceed t_start");
    if (!(config.dt > 0.0)) throw ConfigError("dt must be > 0");
    if (config.chain_length < 1) throw ConfigError("chain_length must be >= 1");
    if (config.sample_stride < 1) throw ConfigError("sample_stride must be >= 1");
    if (config.snapshot_stride < 0) throw ConfigError("snapshot_stride must be >= 0");
    if (!(config.contour_delta >= 0.0)) throw ConfigError("contour_delta must be >= 0");

    const double guard = 2.0 * chain->kappa * (config.t_end - config.t_start) + 10.0;
    if (!(config.chain_length > guard))
        throw ConfigError("light-cone guard violated: chain_length " +
                          std::to_string(config.chain_length) +
                          " must exceed 2*kappa*(t_end - t_start) + 10 = " + fmt_double(guard));

    if (auto* s = config.coupling.as<Sampled>()) {
        const double end = s->start + s->step * static_cast<double>(s->values.size() - 1);
        if (s->start > config.t_start + 1e-12 || end < config.t_end - 1e-12)
            throw ConfigError("sampled coupling does not cover [t_start, t_end]");
    }
    check_contour(config.coupling, config.contour_delta);

    const double fmax = peak_coupling(config.coupling, config.t_start, config.t_end,
                                      config.contour_delta);
    const double rate =
        std::max({std::abs(config.omega_a), 2.0 * chain->kappa, chain->kappa1 * fmax});
    if (config.dt * rate > kStepBudget)
        throw ConfigError("step budget violated: dt * max(|omega_a|, 2 kappa, kappa1 max|f|) = " +
                          fmt_double(config.dt * rate) + " exceeds 0.1");
}

namespace detail {

Trajectory integrate(const EdgeModel& model, const RunParams& params) {
    const int n = params.chain_length;
    const double span = params.t_end - params.t_start;
    const long long steps = std::max<long long>(1, std::llround(span / params.dt));
    const double h = span / static_cast<double>(steps);
    const double kappa = model.kappa;
    const cplx minus_i(0.0, -1.0);

    std::vector<cplx> y(n + 1, cplx{}), k1(n + 1), k2(n + 1), k3(n + 1), k4(n + 1), tmp(n + 1);
    y[0] = 1.0;

    // dy/dt = -i H y
    auto deriv = [&](double t, const std::vector<cplx>& c, std::vector<cplx>& d) {
        const cplx e = model.onsite(t);
        const cplx j = model.hopping(t);
        d[0] = minus_i * (e * c[0] - j * c[1]);
        const cplx c2 = (n >= 2) ? c[2] : cplx{};
        d[1] = minus_i * (-j * c[0] - kappa * c2);
        for (int i = 2; i < n; ++i) d[i] = minus_i * (-kappa * (c[i + 1] + c[i - 1]));
        if (n >= 2) d[n] = minus_i * (-kappa * c[n - 1]);
    };

    Trajectory traj;
    auto record = [&](double t, long long step) {
        const double pc = continuum_norm(y);
        const double ps = std::norm(y[0]);
        if (!std::isfinite(ps) || !std::isfinite(pc) || ps + pc > kNormLimit)
            throw InstabilityError("amplitude overflow at t = " + fmt_double(t) +
                                   " (norm " + fmt_double(ps + pc) + ")");
        traj.samples.push_back({t, ps, pc, y[0]});
        if (params.snapshot_stride > 0 &&
            (step % params.snapshot_stride == 0 || step == steps)) {
            traj.snapshots.push_back({t, y[0], std::vector<cplx>(y.begin() + 1, y.end())});
        }
    };

    record(params.t_start, 0);
    for (long long s = 0; s < steps; ++s) {
        const double t = params.t_start + h * static_cast<double>(s);
        deriv(t, y, k1);
        for (int i = 0; i <= n; ++i) tmp[i] = y[i] + (0.5 * h) * k1[i];
        deriv(t + 0.5 * h, tmp, k2);
        for (int i = 0; i <= n; ++i) tmp[i] = y[i] + (0.5 * h) * k2[i];
        deriv(t + 0.5 * h, tmp, k3);
        for (int i = 0; i <= n; ++i) tmp[i] = y[i] + h * k3[i];
        deriv(t + h, tmp, k4);
        for (int i = 0; i <= n; ++i) y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        const long long done = s + 1;
        if (done % params.sample_stride == 0 || done == steps) {
            const double tn = (done == steps) ? params.t_end
                                              : params.t_start + h * static_cast<double>(done);
            record(tn, done);
        }
    }
    traj.final_state = {params.t_end, y[0], std::vector<cplx>(y.begin() + 1, y.end())};
    return traj;
}

} // namespace detail

Trajectory simulate(const SimConfig& config) {
    validate(config);
    const auto* chain = config.continuum.chain_params();
    const CouplingSpec coupling = config.coupling;
    const double delta = config.contour_delta;
    const double kappa1 = chain->kappa1;
    const cplx onsite(config.omega_a, 0.0);

    detail::EdgeModel model;
    model.kappa = chain->kappa;
    model.onsite = [onsite](double) { return onsite; };
    if (coupling.as<ZeroCoupling>()) {
        model.hopping = [](double) { return cplx{}; };
    } else {
        model.hopping = [coupling, delta, kappa1](double t) {
            return kappa1 * coupling(cplx(t, -delta));
        };
    }
    detail::RunParams params{config.t_start, config.t_end, config.dt,
                             config.chain_length, config.sample_stride, config.snapshot_stride};
    auto traj = detail::integrate(model, params);

    const double tail = std::abs(coupling(cplx(config.t_start, -delta)));
    const double peak = peak_coupling(coupling, config.t_start, config.t_end, delta);
    if (peak > 0.0 && tail > 1e-3 * peak) {
        std::ostringstream msg;
        msg << "|f(t_start)| = " << tail << " is " << tail / peak
            << " of the peak; the finite start truncates the coupling";
        traj.warnings.push_back(msg.str());
    }
    return traj;
}

double final_discrete_population(const Trajectory& traj) {
    if (traj.samples.empty()) throw DomainError("empty trajectory");
    return traj.samples.back().P_s;
}

std::vector<cplx> contour_amplitude(const SimConfig& config, const std::vector<double>& deltas) {
    std::vector<cplx> out;
    out.reserve(deltas.size());
    for (double d : deltas) {
        if (!(d >= 0.0)) throw InvalidContourError("contour offsets must be >= 0");
        check_contour(config.coupling, d);
        SimConfig c = config;
        c.contour_delta = d;
        c.snapshot_stride = 0;
        out.push_back(simulate(c).final_state.c_a);
    }
    return out;
}

std::vector<double> hard_wall_k_grid(int chain_length) {
    if (chain_length < 1) throw DomainError("chain_length must be >= 1");
    std::vector<double> k(chain_length);
    for (int j = 1; j <= chain_length; ++j)
        k[j - 1] = std::numbers::pi * j / (chain_length + 1.0);
    return k;
}

std::vector<SpectrumPoint> bloch_spectrum(const LatticeState& state, const ContinuumSpec& continuum,
                                          const std::vector<double>& k_grid) {
    const auto* chain = continuum.chain_params();
    if (!chain) throw DomainError("bloch_spectrum requires a tight_binding_chain continuum");
    const double norm = -std::sqrt(2.0 / std::numbers::pi);
    std::vector<SpectrumPoint> out;
    out.reserve(k_grid.size());
    for (double k : k_grid) {
        if (!(k > 0.0 && k < std::numbers::pi))
            throw DomainError("Bloch wavenumber " + fmt_double(k) + " outside (0, pi)");
        cplx amp{};
        for (std::size_t n = 0; n < state.chain.size(); ++n)
            amp += std::sin(static_cast<double>(n + 1) * k) * state.chain[n];
        amp *= norm;
        out.push_back({k, -2.0 * chain->kappa * std::cos(k), std::norm(amp)});
    }
    return out;
}

double power_fraction_below(const std::vector<SpectrumPoint>& spectrum, double threshold) {
    double below = 0.0, total = 0.0;
    for (const auto& p : spectrum) {
        total += p.power;
        if (p.omega < threshold) below += p.power;
    }
    return total > 0.0 ? below / total : 0.0;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,P_s,P_c,total,re_c_a,im_c_a\n";
    for (const auto& s : traj.samples) {
        out << fmt_double(s.t) << ',' << fmt_double(s.P_s) << ',' << fmt_double(s.P_c) << ','
            << fmt_double(s.total()) << ',' << fmt_double(s.c_a.real()) << ','
            << fmt_double(s.c_a.imag()) << '\n';
    }
}

void write_snapshots_json(std::ostream& out, const Trajectory& traj) {
    // Hand-rolled to keep large snapshot arrays streaming.
    out << "{\"schema_version\":1,\"snapshots\":[";
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const auto& s = traj.snapshots[i];
        if (i) out << ',';
        out << "{\"t\":" << fmt_double(s.t) << ",\"c_a\":[" << fmt_double(s.c_a.real()) << ','
            << fmt_double(s.c_a.imag()) << "],\"chain\":[";
        for (std::size_t n = 0; n < s.chain.size(); ++n) {
            if (n) out << ',';
            out << '[' << fmt_double(s.chain[n].real()) << ',' << fmt_double(s.chain[n].imag())
                << ']';
        }
        out << "]}";
    }
    out << "]}\n";
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumPoint>& spectrum) {
    out << "omega,power\n";
    for (const auto& p : spectrum) out << fmt_double(p.omega) << ',' << fmt_double(p.power) << '\n';
}

} // namespace nhd
