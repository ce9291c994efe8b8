#include "nhd/continuum.hpp"

#include "nhd/errors.hpp"
#include "nhd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace nhd {

namespace {

constexpr double kPi = std::numbers::pi;

double interpolate(const TabulatedDensity& tab, double omega) {
    const auto& w = tab.omega;
    if (omega < w.front() || omega > w.back()) return 0.0;
    auto it = std::upper_bound(w.begin(), w.end(), omega);
    std::size_t i = (it == w.begin()) ? 0 : static_cast<std::size_t>(it - w.begin()) - 1;
    if (i + 1 >= w.size()) i = w.size() - 2;
    const double x = (omega - w[i]) / (w[i + 1] - w[i]);
    return (1.0 - x) * tab.g_squared[i] + x * tab.g_squared[i + 1];
}

const quad::GaussRule& rule8() {
    static const quad::GaussRule r = quad::gauss_legendre(8);
    return r;
}

double integrate_real(const std::function<double(double)>& f, double a, double b, int panels) {
    if (!(b > a)) return 0.0;
    return quad::composite_gauss([&](double x) { return cplx(f(x), 0.0); }, a, b, panels, rule8())
        .real();
}

// Principal value of int_0^pi N(k)/D(k) dk for the chain, D vanishing at k_a.
double chain_shift(const TightBindingChain& c, double omega_a) {
    const double pref = 2.0 * c.kappa1 * c.kappa1 / kPi;
    auto ratio = [&](double k) {
        const double s = std::sin(k);
        return pref * s * s / (-2.0 * c.kappa * std::cos(k) - omega_a);
    };
    constexpr int kPanels = 256;
    if (std::abs(omega_a) >= 2.0 * c.kappa) return integrate_real(ratio, 0.0, kPi, kPanels);

    const double ka = std::acos(-omega_a / (2.0 * c.kappa));
    const double half = std::min(ka, kPi - ka);
    // Pair k_a + s with k_a - s so the 1/s parts cancel.
    auto paired = [&](double s) { return ratio(ka + s) + ratio(ka - s); };
    double pv = integrate_real(paired, 0.0, half, kPanels);
    if (ka + half < kPi) pv += integrate_real(ratio, ka + half, kPi, kPanels);
    if (ka - half > 0.0) pv += integrate_real(ratio, 0.0, ka - half, kPanels);
    return pv;
}

// Principal value of int g^2/(omega - omega_a) over a tabulated density by
// subtracting g^2(omega_a) and integrating the difference quotient piecewise.
double tabulated_shift(const TabulatedDensity& tab, double omega_a) {
    const auto& w = tab.omega;
    const double lo = w.front(), hi = w.back();
    const bool inside = omega_a > lo && omega_a < hi;
    const double g0 = inside ? interpolate(tab, omega_a) : 0.0;
    auto quotient = [&](double x) {
        return (interpolate(tab, x) - g0) / (x - omega_a);
    };
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double a = w[i], b = w[i + 1];
        if (inside && omega_a > a && omega_a < b) {
            sum += integrate_real(quotient, a, omega_a, 1);
            sum += integrate_real(quotient, omega_a, b, 1);
        } else {
            sum += integrate_real(quotient, a, b, 1);
        }
    }
    if (inside) sum += g0 * std::log((hi - omega_a) / (omega_a - lo));
    return sum;
}

} // namespace

ContinuumSpec::ContinuumSpec(Variant v) : v_(std::move(v)) {
    if (auto* c = std::get_if<TightBindingChain>(&v_)) {
        if (!(c->kappa > 0.0)) throw ConfigError("continuum: kappa must be > 0");
        if (!(c->kappa1 > 0.0)) throw ConfigError("continuum: kappa1 must be > 0");
    } else {
        const auto& t = std::get<TabulatedDensity>(v_);
        if (t.omega.size() != t.g_squared.size())
            throw ConfigError("continuum: omega and g_squared differ in length");
        if (t.omega.size() < 2) throw ConfigError("continuum: table needs at least two rows");
        for (std::size_t i = 0; i < t.omega.size(); ++i) {
            if (t.g_squared[i] < 0.0) throw ConfigError("continuum: g_squared must be >= 0");
            if (i > 0 && !(t.omega[i] > t.omega[i - 1]))
                throw ConfigError("continuum: omega grid must be strictly increasing");
        }
    }
}

ContinuumSpec ContinuumSpec::tabulated(std::vector<double> omega, std::vector<double> g_squared) {
    return ContinuumSpec(TabulatedDensity{std::move(omega), std::move(g_squared)});
}

ContinuumSpec ContinuumSpec::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spectral density table '" + path + "'");
    std::vector<double> omega, g2;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        double a, b;
        if (!(fields >> a)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (omega.empty()) continue; // header row
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected two numbers");
        }
        if (!(fields >> b))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected two numbers");
        omega.push_back(a);
        g2.push_back(b);
    }
    return tabulated(std::move(omega), std::move(g2));
}

std::pair<double, double> ContinuumSpec::band() const {
    if (auto* c = chain_params()) return {-2.0 * c->kappa, 2.0 * c->kappa};
    const auto& t = std::get<TabulatedDensity>(v_);
    return {t.omega.front(), t.omega.back()};
}

double ContinuumSpec::spectral_density(double omega) const {
    if (auto* c = chain_params()) {
        const double edge = 4.0 * c->kappa * c->kappa - omega * omega;
        if (edge <= 0.0) return 0.0;
        const double r = c->kappa1 / c->kappa;
        return r * r * std::sqrt(edge) / (2.0 * kPi);
    }
    return interpolate(std::get<TabulatedDensity>(v_), omega);
}

double spectral_coupling(const ContinuumSpec& spec, double omega) {
    return std::sqrt(spec.spectral_density(omega));
}

cplx memory_function(const ContinuumSpec& spec, double omega_a, double tau, int panels) {
    if (tau < 0.0) throw DomainError("memory_function: tau must be >= 0");
    if (auto* c = spec.chain_params()) {
        // omega = -2 kappa cos k turns |g|^2 d omega into (2 kappa1^2/pi) sin^2 k dk;
        // the integrand is smooth and periodic, so the trapezoid rule converges fast.
        const int m = std::max(panels, static_cast<int>(std::ceil(4.0 * c->kappa * tau)) + 64);
        const double h = kPi / m;
        cplx sum{};
        for (int j = 1; j < m; ++j) {
            const double k = j * h;
            const double s = std::sin(k);
            const double phase = (2.0 * c->kappa * std::cos(k) + omega_a) * tau;
            sum += s * s * cplx(std::cos(phase), std::sin(phase));
        }
        return (2.0 * c->kappa1 * c->kappa1 / kPi) * h * sum;
    }
    const auto& tab = std::get<TabulatedDensity>(spec.variant());
    const auto& w = tab.omega;
    const int per_interval =
        std::max(1, static_cast<int>(std::ceil(static_cast<double>(panels) / (w.size() - 1))));
    auto integrand = [&](double omega) {
        const double phase = -(omega - omega_a) * tau;
        return interpolate(tab, omega) * cplx(std::cos(phase), std::sin(phase));
    };
    cplx sum{};
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const int sub = std::max(per_interval,
                                 static_cast<int>(std::ceil((w[i + 1] - w[i]) * tau / 0.5)));
        sum += quad::composite_gauss(integrand, w[i], w[i + 1], sub, rule8());
    }
    return sum;
}

MarkovConstants decay_constants(const ContinuumSpec& spec, double omega_a) {
    MarkovConstants out;
    out.omega_a = omega_a;
    out.R = kPi * spec.spectral_density(omega_a);
    if (auto* c = spec.chain_params()) {
        out.Delta = chain_shift(*c, omega_a);
        return out;
    }
    const auto& tab = std::get<TabulatedDensity>(spec.variant());
    out.Delta = tabulated_shift(tab, omega_a);

    // Coarse-grid comparison (every other row) as a resolution estimate.
    if (tab.omega.size() >= 5) {
        TabulatedDensity coarse;
        for (std::size_t i = 0; i < tab.omega.size(); i += 2) {
            coarse.omega.push_back(tab.omega[i]);
            coarse.g_squared.push_back(tab.g_squared[i]);
        }
        if (coarse.omega.back() != tab.omega.back()) {
            coarse.omega.push_back(tab.omega.back());
            coarse.g_squared.push_back(tab.g_squared.back());
        }
        out.delta_error_estimate = std::abs(out.Delta - tabulated_shift(coarse, omega_a)) / 3.0;
        const double scale = std::max({std::abs(out.Delta), out.R, 1e-12});
        if (out.delta_error_estimate > 1e-3 * scale) {
            std::ostringstream msg;
            msg << "tabulated density is coarse near omega_a = " << omega_a
                << "; estimated error of Delta " << out.delta_error_estimate;
            out.warning = msg.str();
        }
    }
    return out;
}

cplx memory_integral(const ContinuumSpec& spec, double omega_a, double horizon) {
    if (!(horizon > 0.0)) throw DomainError("memory_integral: horizon must be > 0");
    const auto [lo, hi] = spec.band();
    const double width = std::max(std::abs(lo), std::abs(hi)) + std::abs(omega_a);
    const int panels = static_cast<int>(std::ceil(horizon * width)) + 16;
    return quad::composite_gauss([&](double tau) { return memory_function(spec, omega_a, tau); },
                                 0.0, horizon, panels, rule8());
}

cplx markov_amplitude(const MarkovConstants& constants, cplx interaction_integral) {
    return std::exp(-cplx(constants.R, -constants.Delta) * interaction_integral);
}

cplx markov_amplitude(const MarkovConstants& constants, const CouplingSpec& coupling, double t,
                      double window_start, double tolerance) {
    const auto integral = interaction_integral_until(coupling, t, tolerance, window_start);
    return markov_amplitude(constants, integral.value);
}

double markov_final_population(const MarkovConstants& constants, const CouplingSpec& coupling,
                               std::pair<double, double> window, double tolerance) {
    const auto area = effective_interaction_time(coupling, window, tolerance);
    return std::exp(-2.0 * (cplx(constants.R, -constants.Delta) * area.value).real());
}

} // namespace nhd
