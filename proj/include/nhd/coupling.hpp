#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace nhd {

using cplx = std::complex<double>;

// One term A / (t - t_n)^order of a meromorphic coupling envelope.
struct PoleTerm {
    cplx amplitude{1.0, 0.0};
    cplx pole{0.0, 1.0};
    int order{1};

    bool operator==(const PoleTerm&) const = default;
};

class CouplingSpec;

struct PoleExpansion {
    std::vector<PoleTerm> terms;
};

// Hermitian restriction: at real t evaluates to Re f(t). Off the real axis it
// is continued analytically as (f(t) + conj(f(conj t))) / 2.
struct RealPartOnly {
    std::shared_ptr<const CouplingSpec> inner;
};

// Rotating-wave envelope f(t) = J0(A(t)/Omega) with A(t) = Omega [A0 + dA(t)].
struct BesselEnvelope {
    double base{0.0};
    std::shared_ptr<const CouplingSpec> perturbation;
    double omega{1.0};
};

// Uniform samples, linearly interpolated. Real t only.
struct Sampled {
    double start{0.0};
    double step{1.0};
    std::vector<cplx> values;
};

struct ZeroCoupling {};

// Immutable description of a time-dependent complex coupling f(t).
class CouplingSpec {
public:
    using Variant = std::variant<PoleExpansion, RealPartOnly, BesselEnvelope, Sampled, ZeroCoupling>;

    CouplingSpec() : v_(ZeroCoupling{}) {}
    explicit CouplingSpec(Variant v);

    static CouplingSpec zero() { return CouplingSpec(); }
    static CouplingSpec poles(std::vector<PoleTerm> terms);
    static CouplingSpec single_pole(cplx amplitude, cplx pole, int order);
    static CouplingSpec real_part_of(CouplingSpec inner);
    static CouplingSpec bessel(double base, CouplingSpec perturbation, double omega);
    static CouplingSpec sampled(double start, double step, std::vector<cplx> values);

    const Variant& variant() const { return v_; }

    template <class T>
    const T* as() const { return std::get_if<T>(&v_); }

    // f(t). Throws SingularityError at a pole, DomainError for sampled data
    // off the real axis or outside the grid.
    cplx operator()(cplx t) const;

    // Every pole of the analytic continuation that a finite pole list can
    // describe (pole expansions, their real parts, Bessel perturbations).
    // nullopt for sampled data.
    std::optional<std::vector<cplx>> singularities() const;

    // Pole expansion equal to this spec on the real axis, if one exists.
    std::optional<PoleExpansion> real_axis_pole_form() const;

private:
    Variant v_;
};

// Scale every amplitude of a pole-expressible spec by `factor` (used by the
// quadratic-scaling checks); throws DomainError otherwise.
CouplingSpec scaled(const CouplingSpec& spec, cplx factor);

// Translate f(t) -> f(t - shift).
CouplingSpec shifted(const CouplingSpec& spec, double shift);

// ---- operations --------------------------------------------------------

cplx eval_coupling(const CouplingSpec& spec, cplx t);

struct EffectiveTime {
    cplx value{};
    double quadrature_error_estimate{0.0};
};

// A = integral of f(t)^2 over the real line. Adaptive Simpson on `window`
// plus an analytic asymptotic tail for pole-expressible specs.
EffectiveTime effective_interaction_time(const CouplingSpec& spec, std::pair<double, double> window,
                                         double tolerance);

// Integral of f^2 over (-inf, t]. Pole-expressible specs get an exact tail;
// other specs are integrated from `fallback_start` with the tail dropped.
EffectiveTime interaction_integral_until(const CouplingSpec& spec, double t, double tolerance,
                                         double fallback_start);

struct UniformGrid {
    double start{0.0};
    double step{1.0};
    std::vector<double> values;

    double time(std::size_t i) const { return start + step * static_cast<double>(i); }
};

// Imaginary partner f_I of real samples f_R such that f_R + i f_I extends
// analytically into the lower half t-plane. Throws EdgeTruncationError when
// the edge samples exceed 10% of the peak.
UniformGrid hilbert_partner(const UniformGrid& real_samples);

// Integral of f^2(theta - i delta) over real theta. For a pole expansion with
// all poles above the contour this is zero; the returned residual is the
// numerical value. Throws InvalidContourError if a pole is on or below the line.
cplx certify_zero_contour_integral(const CouplingSpec& spec, double delta, double tolerance);

// J0(A(t)/Omega) with A(t) = Omega [a0 + dA(t)].
cplx bessel_effective_coupling(const CouplingSpec& delta_a, double a0, double omega, double t);

// Laurent coefficients c_k of f(t) = sum_k c_k t^-k about t = infinity
// (index k in [0, max_power]); valid for |t| > max |t_n|.
std::vector<cplx> laurent_at_infinity(const PoleExpansion& pe, int max_power);

} // namespace nhd
