#include "nhd/coupling.hpp"

#include "nhd/bessel.hpp"
#include "nhd/errors.hpp"
#include "nhd/quadrature.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

namespace nhd {

namespace {

cplx eval_poles(const PoleExpansion& pe, cplx t) {
    cplx sum{};
    for (const auto& term : pe.terms) {
        const cplx d = t - term.pole;
        if (std::abs(d) <= 1e-13 * (1.0 + std::abs(term.pole)))
            throw SingularityError("coupling evaluated at a pole");
        sum += term.amplitude / std::pow(d, term.order);
    }
    return sum;
}

double max_pole_modulus(const PoleExpansion& pe) {
    double r = 0.0;
    for (const auto& term : pe.terms) r = std::max(r, std::abs(term.pole));
    return r;
}

double min_pole_height(const PoleExpansion& pe) {
    double h = std::numeric_limits<double>::infinity();
    for (const auto& term : pe.terms) h = std::min(h, std::abs(term.pole.imag()));
    return h;
}

void check_off_real_axis(const PoleExpansion& pe) {
    for (const auto& term : pe.terms)
        if (std::abs(term.pole.imag()) < 1e-12)
            throw SingularityError("pole on the real axis; integral of f^2 does not exist");
}

// Laurent coefficients of f^2 about infinity.
std::vector<cplx> squared_series(const PoleExpansion& pe, int max_power) {
    const auto c = laurent_at_infinity(pe, max_power);
    std::vector<cplx> d(max_power + 1, cplx{});
    for (int i = 0; i <= max_power; ++i) {
        if (c[i] == cplx{}) continue;
        for (int j = 0; i + j <= max_power; ++j) d[i + j] += c[i] * c[j];
    }
    return d;
}

struct TailSum {
    cplx value{};
    double remainder{0.0};
};

// Integral of f^2 over [T, inf) (sign = +1) or (-inf, -T] (sign = -1).
TailSum series_tail(const PoleExpansion& pe, double T, int sign) {
    TailSum out;
    if (pe.terms.empty()) return out;
    const double r = max_pole_modulus(pe) / T;
    int kmax = 400;
    if (r > 0.0) kmax = std::min(400, static_cast<int>(std::ceil(std::log(1e-18) / std::log(r))) + 24);
    kmax = std::max(kmax, 8);
    const auto d = squared_series(pe, kmax);
    double last = 0.0;
    for (int k = 2; k <= kmax; ++k) {
        const double mag_pow = std::pow(T, 1.0 - k) / (k - 1.0);
        const double parity = (sign < 0 && (k % 2 == 1)) ? -1.0 : 1.0;
        const cplx term = d[k] * (parity * mag_pow);
        out.value += term;
        if (k >= kmax - 1) last += std::abs(term);
    }
    out.remainder = (r < 1.0) ? last * r / (1.0 - r) : std::numeric_limits<double>::infinity();
    return out;
}

int panels_for(double a, double b, double scale) {
    const double n = std::ceil((b - a) / std::max(scale, 1e-9));
    return static_cast<int>(std::clamp(n, 64.0, 1.0e6));
}

// Tail estimate for envelopes without an analytic tail, assuming f ~ 1/t.
double edge_tail_estimate(const CouplingSpec& spec, double t_min, double t_max) {
    auto sq = [&](double t) { return std::norm(spec(cplx(t, 0.0))); };
    return sq(t_min) * std::abs(t_min) + sq(t_max) * std::abs(t_max);
}

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Non-periodic discrete Hilbert transform, (1/pi) P sum x[m-j] / j with the
// odd-tap kernel 2/(pi j), computed as an FFT linear convolution.
std::vector<double> discrete_hilbert(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const std::size_t L = 2 * n;
    fftw_complex* sig = fftw_alloc_complex(L);
    fftw_complex* ker = fftw_alloc_complex(L);
    for (std::size_t i = 0; i < L; ++i) {
        sig[i][0] = sig[i][1] = 0.0;
        ker[i][0] = ker[i][1] = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) sig[i][0] = x[i];
    for (std::size_t j = 1; j < n; j += 2) {
        const double h = 2.0 / (std::numbers::pi * static_cast<double>(j));
        ker[j][0] = h;
        ker[L - j][0] = -h;
    }
    fftw_plan fs, fk, inv;
    {
        std::lock_guard lock(fftw_planner_mutex());
        fs = fftw_plan_dft_1d(static_cast<int>(L), sig, sig, FFTW_FORWARD, FFTW_ESTIMATE);
        fk = fftw_plan_dft_1d(static_cast<int>(L), ker, ker, FFTW_FORWARD, FFTW_ESTIMATE);
        inv = fftw_plan_dft_1d(static_cast<int>(L), sig, sig, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(fs);
    fftw_execute(fk);
    for (std::size_t i = 0; i < L; ++i) {
        const double re = sig[i][0] * ker[i][0] - sig[i][1] * ker[i][1];
        const double im = sig[i][0] * ker[i][1] + sig[i][1] * ker[i][0];
        sig[i][0] = re;
        sig[i][1] = im;
    }
    fftw_execute(inv);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sig[i][0] / static_cast<double>(L);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(fs);
        fftw_destroy_plan(fk);
        fftw_destroy_plan(inv);
    }
    fftw_free(sig);
    fftw_free(ker);
    return out;
}

} // namespace

// ---- CouplingSpec -------------------------------------------------------

CouplingSpec::CouplingSpec(Variant v) : v_(std::move(v)) {
    if (auto* pe = std::get_if<PoleExpansion>(&v_)) {
        for (const auto& term : pe->terms)
            if (term.order < 1) throw ConfigError("pole order must be >= 1");
    } else if (auto* rp = std::get_if<RealPartOnly>(&v_)) {
        if (!rp->inner) throw ConfigError("real_part_only requires an inner coupling");
    } else if (auto* be = std::get_if<BesselEnvelope>(&v_)) {
        if (!be->perturbation) throw ConfigError("bessel_envelope requires a perturbation");
        if (!(be->omega > 0.0)) throw ConfigError("bessel_envelope omega must be > 0");
    } else if (auto* s = std::get_if<Sampled>(&v_)) {
        if (s->values.size() < 2) throw ConfigError("sampled coupling needs at least two samples");
        if (!(s->step > 0.0)) throw ConfigError("sampled coupling step must be > 0");
    }
}

CouplingSpec CouplingSpec::poles(std::vector<PoleTerm> terms) {
    return CouplingSpec(PoleExpansion{std::move(terms)});
}

CouplingSpec CouplingSpec::single_pole(cplx amplitude, cplx pole, int order) {
    return poles({PoleTerm{amplitude, pole, order}});
}

CouplingSpec CouplingSpec::real_part_of(CouplingSpec inner) {
    return CouplingSpec(RealPartOnly{std::make_shared<const CouplingSpec>(std::move(inner))});
}

CouplingSpec CouplingSpec::bessel(double base, CouplingSpec perturbation, double omega) {
    return CouplingSpec(
        BesselEnvelope{base, std::make_shared<const CouplingSpec>(std::move(perturbation)), omega});
}

CouplingSpec CouplingSpec::sampled(double start, double step, std::vector<cplx> values) {
    return CouplingSpec(Sampled{start, step, std::move(values)});
}

cplx CouplingSpec::operator()(cplx t) const {
    return std::visit(
        [&](const auto& s) -> cplx {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PoleExpansion>) {
                return eval_poles(s, t);
            } else if constexpr (std::is_same_v<T, RealPartOnly>) {
                if (t.imag() == 0.0) return {(*s.inner)(t).real(), 0.0};
                return 0.5 * ((*s.inner)(t) + std::conj((*s.inner)(std::conj(t))));
            } else if constexpr (std::is_same_v<T, BesselEnvelope>) {
                return bessel_j0(s.base + (*s.perturbation)(t));
            } else if constexpr (std::is_same_v<T, Sampled>) {
                if (t.imag() != 0.0)
                    throw DomainError("sampled coupling cannot be evaluated off the real axis");
                const double x = (t.real() - s.start) / s.step;
                const double last = static_cast<double>(s.values.size() - 1);
                if (x < -1e-9 || x > last + 1e-9)
                    throw DomainError("time " + std::to_string(t.real()) +
                                      " outside sampled coupling range");
                const double xc = std::clamp(x, 0.0, last);
                auto i = static_cast<std::size_t>(std::floor(xc));
                if (i + 1 >= s.values.size()) i = s.values.size() - 2;
                const double w = xc - static_cast<double>(i);
                return (1.0 - w) * s.values[i] + w * s.values[i + 1];
            } else {
                return {};
            }
        },
        v_);
}

std::optional<std::vector<cplx>> CouplingSpec::singularities() const {
    return std::visit(
        [&](const auto& s) -> std::optional<std::vector<cplx>> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PoleExpansion>) {
                std::vector<cplx> out;
                for (const auto& term : s.terms) out.push_back(term.pole);
                return out;
            } else if constexpr (std::is_same_v<T, RealPartOnly>) {
                auto inner = s.inner->singularities();
                if (!inner) return std::nullopt;
                const std::size_t n = inner->size();
                for (std::size_t i = 0; i < n; ++i) inner->push_back(std::conj((*inner)[i]));
                return inner;
            } else if constexpr (std::is_same_v<T, BesselEnvelope>) {
                return s.perturbation->singularities();
            } else if constexpr (std::is_same_v<T, Sampled>) {
                return std::nullopt;
            } else {
                return std::vector<cplx>{};
            }
        },
        v_);
}

std::optional<PoleExpansion> CouplingSpec::real_axis_pole_form() const {
    if (auto* pe = as<PoleExpansion>()) return *pe;
    if (as<ZeroCoupling>()) return PoleExpansion{};
    if (auto* rp = as<RealPartOnly>()) {
        auto inner = rp->inner->real_axis_pole_form();
        if (!inner) return std::nullopt;
        PoleExpansion out;
        for (const auto& term : inner->terms) {
            out.terms.push_back({0.5 * term.amplitude, term.pole, term.order});
            out.terms.push_back({0.5 * std::conj(term.amplitude), std::conj(term.pole), term.order});
        }
        return out;
    }
    return std::nullopt;
}

CouplingSpec scaled(const CouplingSpec& spec, cplx factor) {
    if (auto* pe = spec.as<PoleExpansion>()) {
        auto out = *pe;
        for (auto& term : out.terms) term.amplitude *= factor;
        return CouplingSpec(out);
    }
    if (spec.as<ZeroCoupling>()) return spec;
    if (auto* rp = spec.as<RealPartOnly>()) {
        if (factor.imag() != 0.0)
            throw DomainError("real_part_only can only be scaled by a real factor");
        return CouplingSpec::real_part_of(scaled(*rp->inner, factor));
    }
    if (auto* s = spec.as<Sampled>()) {
        auto out = *s;
        for (auto& v : out.values) v *= factor;
        return CouplingSpec(out);
    }
    throw DomainError("bessel envelopes cannot be scaled linearly");
}

CouplingSpec shifted(const CouplingSpec& spec, double shift) {
    return std::visit(
        [&](const auto& s) -> CouplingSpec {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PoleExpansion>) {
                auto out = s;
                for (auto& term : out.terms) term.pole += shift;
                return CouplingSpec(out);
            } else if constexpr (std::is_same_v<T, RealPartOnly>) {
                return CouplingSpec::real_part_of(shifted(*s.inner, shift));
            } else if constexpr (std::is_same_v<T, BesselEnvelope>) {
                return CouplingSpec::bessel(s.base, shifted(*s.perturbation, shift), s.omega);
            } else if constexpr (std::is_same_v<T, Sampled>) {
                auto out = s;
                out.start += shift;
                return CouplingSpec(out);
            } else {
                return CouplingSpec();
            }
        },
        spec.variant());
}

// ---- operations ---------------------------------------------------------

cplx eval_coupling(const CouplingSpec& spec, cplx t) { return spec(t); }

std::vector<cplx> laurent_at_infinity(const PoleExpansion& pe, int max_power) {
    std::vector<cplx> c(max_power + 1, cplx{});
    for (const auto& term : pe.terms) {
        // A (t - p)^-a = A sum_j binom(a + j - 1, j) p^j t^-(a + j)
        double binom = 1.0;
        cplx ppow = 1.0;
        for (int j = 0; term.order + j <= max_power; ++j) {
            if (j > 0) {
                binom *= static_cast<double>(term.order + j - 1) / j;
                ppow *= term.pole;
            }
            c[term.order + j] += term.amplitude * binom * ppow;
        }
    }
    return c;
}

EffectiveTime effective_interaction_time(const CouplingSpec& spec, std::pair<double, double> window,
                                         double tolerance) {
    const auto [t_min, t_max] = window;
    if (!(t_min < t_max)) throw DomainError("effective_interaction_time: empty window");
    if (!(tolerance > 0.0)) throw DomainError("effective_interaction_time: tolerance must be > 0");

    if (auto pf = spec.real_axis_pole_form()) {
        if (pf->terms.empty()) return {};
        check_off_real_axis(*pf);
        const double reach = max_pole_modulus(*pf);
        if (!(t_min < 0.0 && t_max > 0.0) || -t_min < 2.0 * reach || t_max < 2.0 * reach)
            throw WindowTooSmallError("window must enclose [-2R, 2R] with R = " +
                                      std::to_string(reach) + " (largest pole modulus)");
        const auto left = series_tail(*pf, -t_min, -1);
        const auto right = series_tail(*pf, t_max, +1);
        const double tail_err = left.remainder + right.remainder;
        if (tail_err > tolerance)
            throw WindowTooSmallError("asymptotic tail uncertainty exceeds tolerance");

        const PoleExpansion pe = *pf;
        auto integrand = [&pe](double t) {
            const cplx f = eval_poles(pe, cplx(t, 0.0));
            return f * f;
        };
        const int panels = panels_for(t_min, t_max, 0.5 * min_pole_height(pe));
        const auto body = quad::adaptive_simpson(integrand, t_min, t_max, 0.5 * tolerance, panels);
        return {body.value + left.value + right.value, body.error_estimate + tail_err};
    }

    double lo = t_min, hi = t_max;
    if (auto* s = spec.as<Sampled>()) {
        const double end = s->start + s->step * static_cast<double>(s->values.size() - 1);
        lo = std::max(lo, s->start);
        hi = std::min(hi, end);
        if (!(lo < hi)) return {};
        auto integrand = [&spec](double t) {
            const cplx f = spec(cplx(t, 0.0));
            return f * f;
        };
        const int panels = static_cast<int>(std::clamp(std::ceil((hi - lo) / s->step), 1.0, 1e6));
        const auto body = quad::adaptive_simpson(integrand, lo, hi, tolerance, panels);
        return {body.value, body.error_estimate + edge_tail_estimate(spec, lo, hi)};
    }

    // Envelopes with no finite pole description (Bessel).
    for (double edge : {t_min, t_max}) {
        const double near = std::abs(spec(cplx(edge, 0.0)));
        const double far = std::abs(spec(cplx(10.0 * edge, 0.0)));
        if (far > 0.5 * near && far * far * 10.0 * std::abs(edge) > tolerance)
            throw DivergenceError("coupling does not decay; integral of f^2 diverges");
    }
    auto integrand = [&spec](double t) {
        const cplx f = spec(cplx(t, 0.0));
        return f * f;
    };
    const auto body = quad::adaptive_simpson(integrand, lo, hi, 0.5 * tolerance,
                                             panels_for(lo, hi, 0.25));
    const double tail = edge_tail_estimate(spec, lo, hi);
    if (tail > tolerance) throw WindowTooSmallError("tail estimate exceeds tolerance");
    return {body.value, body.error_estimate + tail};
}

EffectiveTime interaction_integral_until(const CouplingSpec& spec, double t, double tolerance,
                                         double fallback_start) {
    if (auto pf = spec.real_axis_pole_form()) {
        if (pf->terms.empty()) return {};
        check_off_real_axis(*pf);
        const double anchor = std::max(4.0 * max_pole_modulus(*pf), 10.0);
        if (t <= -anchor) {
            const auto tail = series_tail(*pf, -t, -1);
            return {tail.value, tail.remainder};
        }
        const auto tail = series_tail(*pf, anchor, -1);
        const PoleExpansion pe = *pf;
        auto integrand = [&pe](double x) {
            const cplx f = eval_poles(pe, cplx(x, 0.0));
            return f * f;
        };
        const auto body = quad::adaptive_simpson(integrand, -anchor, t, 0.5 * tolerance,
                                                 panels_for(-anchor, t, 0.5 * min_pole_height(pe)));
        return {body.value + tail.value, body.error_estimate + tail.remainder};
    }
    if (t <= fallback_start) return {};
    auto integrand = [&spec](double x) {
        const cplx f = spec(cplx(x, 0.0));
        return f * f;
    };
    const auto body = quad::adaptive_simpson(integrand, fallback_start, t, tolerance,
                                             panels_for(fallback_start, t, 0.25));
    const double dropped = std::norm(spec(cplx(fallback_start, 0.0))) * std::abs(fallback_start);
    return {body.value, body.error_estimate + dropped};
}

UniformGrid hilbert_partner(const UniformGrid& real_samples) {
    const auto& v = real_samples.values;
    const std::size_t n = v.size();
    if (n < 16) throw DomainError("hilbert_partner needs at least 16 samples");
    if (!(real_samples.step > 0.0)) throw DomainError("hilbert_partner: step must be > 0");

    UniformGrid out{real_samples.start, real_samples.step, std::vector<double>(n, 0.0)};
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) return out;
    const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
    if (edge > 0.1 * peak)
        throw EdgeTruncationError("edge samples reach " + std::to_string(edge / peak) +
                                  " of the peak; widen the grid");

    // Slow 1/t and 1/t^2 tails are carried by a Lorentzian pair whose partner
    // is known in closed form; only the fast-decaying residual goes through
    // the discrete transform.
    const double span = real_samples.step * static_cast<double>(n - 1);
    const double center = real_samples.start + 0.5 * span;
    const double width = span / 16.0;
    auto odd_basis = [&](double t) {
        const double s = t - center;
        return s / (s * s + width * width);
    };
    auto even_basis = [&](double t) {
        const double s = t - center;
        return width / (s * s + width * width);
    };
    const std::size_t edge_count = std::max<std::size_t>(4, n / 10);
    double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
    auto accumulate = [&](std::size_t i) {
        const double t = real_samples.time(i);
        const double b1 = odd_basis(t), b2 = even_basis(t);
        s11 += b1 * b1;
        s12 += b1 * b2;
        s22 += b2 * b2;
        r1 += b1 * v[i];
        r2 += b2 * v[i];
    };
    for (std::size_t i = 0; i < edge_count; ++i) {
        accumulate(i);
        accumulate(n - 1 - i);
    }
    const double det = s11 * s22 - s12 * s12;
    double a = 0.0, b = 0.0;
    if (std::abs(det) > 1e-300) {
        a = (r1 * s22 - r2 * s12) / det;
        b = (s11 * r2 - s12 * r1) / det;
    }

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = real_samples.time(i);
        residual[i] = v[i] - a * odd_basis(t) - b * even_basis(t);
    }
    const auto h = discrete_hilbert(residual);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = real_samples.time(i);
        // Partner of s/(s^2+w^2) is w/(s^2+w^2); of w/(s^2+w^2) is -s/(s^2+w^2).
        out.values[i] = a * even_basis(t) - b * odd_basis(t) - h[i];
    }
    return out;
}

cplx certify_zero_contour_integral(const CouplingSpec& spec, double delta, double tolerance) {
    if (!(delta >= 0.0)) throw DomainError("contour offset must be >= 0");
    const auto* pe = spec.as<PoleExpansion>();
    if (!pe) {
        if (spec.as<ZeroCoupling>()) return {};
        throw DomainError("contour certificate requires a pole expansion");
    }
    PoleExpansion moved = *pe;
    double reach = 0.0;
    for (auto& term : moved.terms) {
        if (term.pole.imag() <= -delta)
            throw InvalidContourError("pole on or below the contour line Im t = -" +
                                      std::to_string(delta));
        term.pole += cplx(0.0, delta);
        reach = std::max(reach, std::abs(term.pole));
    }
    const double T = std::max(20.0 * reach, 50.0);
    return effective_interaction_time(CouplingSpec(moved), {-T, T}, 0.1 * tolerance).value;
}

cplx bessel_effective_coupling(const CouplingSpec& delta_a, double a0, double omega, double t) {
    if (!(omega > 0.0)) throw DomainError("drive frequency must be > 0");
    const cplx amplitude = omega * (a0 + delta_a(cplx(t, 0.0)));
    return bessel_j0(amplitude / omega);
}

} // namespace nhd
