#include <doctest.h>

#include "nhd/bessel.hpp"
#include "nhd/coupling.hpp"
#include "nhd/errors.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace nhd;

namespace {

constexpr double kPi = std::numbers::pi;

CouplingSpec lorentz_pole() { return CouplingSpec::single_pole(1.0, cplx(0, 2), 2); }

UniformGrid grid_of(double span, int n, const std::function<double(double)>& f) {
    UniformGrid g;
    g.start = -span / 2;
    g.step = span / (n - 1);
    for (int i = 0; i < n; ++i) g.values.push_back(f(g.time(i)));
    return g;
}

} // namespace

TEST_SUITE("coupling") {

TEST_CASE("pole expansion evaluates by direct substitution") {
    const auto f = lorentz_pole();
    CHECK(std::abs(eval_coupling(f, 0.0) - cplx(-0.25, 0)) < 1e-15);
    CHECK(std::abs(eval_coupling(f, 2.0) - cplx(0, 0.125)) < 1e-15);
    CHECK_THROWS_AS(eval_coupling(f, cplx(0, 2)), SingularityError);
}

TEST_CASE("bessel envelope at the first J0 zero is nearly zero") {
    const auto f = CouplingSpec::bessel(2.404826, CouplingSpec::zero(), 8.0);
    CHECK(std::abs(eval_coupling(f, 3.0)) < 1e-6);
    CHECK(std::abs(bessel_effective_coupling(CouplingSpec::zero(), 0.0, 8.0, 1.0) - 1.0) < 1e-15);
    CHECK(std::abs(bessel_effective_coupling(CouplingSpec::zero(), 2.404826, 8.0, 1.0)) < 1e-6);
}

TEST_CASE("bessel linearization about the first zero") {
    // J0(x0 + 0.01) ~ J0'(x0) * 0.01 = -J1(x0) * 0.01
    const auto perturb = CouplingSpec::sampled(-1.0, 1.0, {0.01, 0.01, 0.01});
    const cplx f = bessel_effective_coupling(perturb, 2.404826, 8.0, 0.0);
    CHECK(f.real() == doctest::Approx(-0.005191).epsilon(0.02));
    CHECK(f.real() == doctest::Approx(oracle::bessel_j0(2.414826).real()).epsilon(1e-8));
}

TEST_CASE("sampled couplings interpolate linearly on the real axis only") {
    const auto f = CouplingSpec::sampled(0.0, 0.5, {0.0, 1.0, cplx(0, 2)});
    CHECK(std::abs(eval_coupling(f, 0.25) - 0.5) < 1e-15);
    CHECK(std::abs(eval_coupling(f, 0.75) - cplx(0.5, 1.0)) < 1e-15);
    CHECK_THROWS_AS(eval_coupling(f, 1.5), DomainError);
    CHECK_THROWS_AS(eval_coupling(f, cplx(0.5, 0.1)), DomainError);
}

TEST_CASE("real part only is the real part on the real axis") {
    const auto inner = CouplingSpec::poles({{cplx(1, 0.5), cplx(0.3, 2), 2}, {cplx(-2, 0), cplx(-1, 1), 1}});
    const auto re = CouplingSpec::real_part_of(inner);
    for (double t : {-30.0, -1.0, 0.0, 0.7, 4.0}) {
        CHECK(eval_coupling(re, t).real() == eval_coupling(inner, t).real());
        CHECK(eval_coupling(re, t).imag() == 0.0);
    }
    // (t^2 - 4)/(t^2 + 4)^2 continued off the axis
    const cplx z(0.4, -0.3);
    const cplx expected = (z * z - 4.0) / ((z * z + 4.0) * (z * z + 4.0));
    CHECK(std::abs(eval_coupling(CouplingSpec::real_part_of(lorentz_pole()), z) - expected) < 1e-14);
}

TEST_CASE("effective time vanishes for an upper half-plane pole") {
    const auto a = effective_interaction_time(lorentz_pole(), {-200, 200}, 1e-10);
    CHECK(std::abs(a.value) < 1e-10);
    CHECK(a.quadrature_error_estimate >= 0.0);
}

TEST_CASE("effective time of the real part is pi/32") {
    const auto re = CouplingSpec::real_part_of(lorentz_pole());
    const auto a = effective_interaction_time(re, {-200, 200}, 1e-10);
    const cplx ref = oracle::trapezoid(
        [](double t) {
            const double v = (t * t - 4) / ((t * t + 4) * (t * t + 4));
            return cplx(v * v, 0);
        },
        -1e4, 1e4, 4'000'000);
    CHECK(std::abs(ref.real() - kPi / 32) < 1e-8);
    CHECK(std::abs(a.value - ref) < 1e-8);
    // half the integral of |f|^2 = 1/((t^2+4)^2), which is pi/16
    CHECK(a.value.real() == doctest::Approx(0.5 * kPi / 16).epsilon(1e-9));
}

TEST_CASE("effective time is quadratic in f") {
    const auto re = CouplingSpec::real_part_of(lorentz_pole());
    const cplx a1 = effective_interaction_time(re, {-200, 200}, 1e-11).value;
    const cplx a2 = effective_interaction_time(scaled(re, 2.0), {-200, 200}, 1e-11).value;
    CHECK(std::abs(a2 - 4.0 * a1) < 1e-9);
}

TEST_CASE("effective time errors") {
    const auto f = CouplingSpec::single_pole(1.0, cplx(0, 50), 2);
    CHECK_THROWS_AS(effective_interaction_time(f, {-10, 10}, 1e-8), WindowTooSmallError);
    const auto flat = CouplingSpec::bessel(0.0, CouplingSpec::zero(), 8.0);
    CHECK_THROWS_AS(effective_interaction_time(flat, {-100, 100}, 1e-6), DivergenceError);
    CHECK_THROWS_AS(effective_interaction_time(CouplingSpec::single_pole(1.0, 3.0, 2), {-10, 10}, 1e-6),
                    SingularityError);
}

TEST_CASE("hilbert partner recovers the imaginary part of pole couplings") {
    struct Pair {
        std::function<double(double)> re, im;
        double height;
    };
    const Pair pairs[] = {
        {[](double t) { return (t * t - 4) / ((t * t + 4) * (t * t + 4)); },
         [](double t) { return 4 * t / ((t * t + 4) * (t * t + 4)); }, 2.0},
        {[](double t) { return t / (t * t + 1); }, [](double t) { return 1 / (t * t + 1); }, 1.0},
    };
    for (const auto& p : pairs) {
        const auto g = grid_of(200 * p.height, 4096, p.re);
        const auto h = hilbert_partner(g);
        REQUIRE(h.values.size() == g.values.size());
        double peak = 0, err = 0;
        for (std::size_t i = 0; i < g.values.size(); ++i) {
            peak = std::max(peak, std::abs(p.im(g.time(i))));
            if (i > g.values.size() / 10 && i < 9 * g.values.size() / 10)
                err = std::max(err, std::abs(h.values[i] - p.im(g.time(i))));
        }
        CHECK(err <= 1e-3 * peak);
    }
}

TEST_CASE("hilbert partner of zero is zero") {
    const auto h = hilbert_partner(grid_of(100, 2048, [](double) { return 0.0; }));
    for (double v : h.values) CHECK(v == 0.0);
}

TEST_CASE("hilbert partner rejects truncated data") {
    CHECK_THROWS_AS(hilbert_partner(grid_of(20, 2048, [](double t) { return 1 / (1 + 0.01 * t * t); })),
                    EdgeTruncationError);
}

TEST_CASE("contour certificate") {
    CHECK(std::abs(certify_zero_contour_integral(lorentz_pole(), 0.0, 1e-8)) <= 1e-8);
    CHECK(std::abs(certify_zero_contour_integral(lorentz_pole(), 1.0, 1e-8)) <= 1e-8);
    const auto two = CouplingSpec::poles({{1.0, cplx(0, 1), 2}, {1.0, cplx(0, 3), 2}});
    CHECK(std::abs(certify_zero_contour_integral(two, 0.0, 1e-8)) <= 1e-8);
    // the line Im t = -delta moves down; poles must stay strictly above it
    CHECK(std::abs(certify_zero_contour_integral(lorentz_pole(), 5.0, 1e-8)) <= 1e-8);
    const auto lower = CouplingSpec::single_pole(1.0, cplx(0.5, -1.0), 2);
    CHECK_THROWS_AS(certify_zero_contour_integral(lower, 0.5, 1e-8), InvalidContourError);
    CHECK_THROWS_AS(certify_zero_contour_integral(lower, 1.0, 1e-8), InvalidContourError);
    CHECK(std::abs(certify_zero_contour_integral(lower, 3.0, 1e-8)) <= 1e-8);
    CHECK_THROWS_AS(certify_zero_contour_integral(CouplingSpec::sampled(0, 1, {1, 1}), 0.0, 1e-8), DomainError);
}

TEST_CASE("laurent expansion at infinity") {
    // 1/(t - a)^2 = sum_{k>=2} (k-1) a^(k-2) t^-k
    const cplx a(0.5, 2.0);
    PoleExpansion pe{{{1.0, a, 2}}};
    const auto c = laurent_at_infinity(pe, 6);
    REQUIRE(c.size() == 7);
    CHECK(std::abs(c[0]) == 0.0);
    CHECK(std::abs(c[1]) == 0.0);
    for (int k = 2; k <= 6; ++k) CHECK(std::abs(c[k] - double(k - 1) * std::pow(a, k - 2)) < 1e-12);
}

TEST_CASE("shifted translates the argument") {
    const auto f = lorentz_pole();
    const auto g = shifted(f, 3.0);
    CHECK(std::abs(eval_coupling(g, 3.5) - eval_coupling(f, 0.5)) < 1e-15);
}

}
