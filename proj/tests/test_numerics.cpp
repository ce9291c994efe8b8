#include <doctest.h>

#include "nhd/bessel.hpp"
#include "nhd/quadrature.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using nhd::quad::cplx;

TEST_SUITE("numerics") {

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 8, 16}) {
        const auto rule = nhd::quad::gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        const int deg = 2 * n - 1;
        double integral = 0.0;
        for (int i = 0; i < n; ++i) integral += rule.weights[i] * std::pow(rule.nodes[i], deg - 1);
        // x^(2n-2) over [-1, 1]
        CHECK(integral == doctest::Approx(2.0 / (deg)).epsilon(1e-13));
    }
}

TEST_CASE("composite gauss on an oscillatory integrand") {
    const auto rule = nhd::quad::gauss_legendre(8);
    const cplx v = nhd::quad::composite_gauss(
        [](double x) { return cplx(std::cos(x), std::sin(x)); }, 0.0, 10.0, 20, rule);
    const cplx exact = cplx(std::sin(10.0), 1.0 - std::cos(10.0));
    CHECK(std::abs(v - exact) < 1e-12);
}

TEST_CASE("adaptive simpson meets its tolerance and reports a non-negative error") {
    auto lorentz = [](double x) { return cplx(1.0 / (1.0 + x * x), 0.0); };
    const auto r = nhd::quad::adaptive_simpson(lorentz, -50.0, 50.0, 1e-10);
    CHECK(std::abs(r.value.real() - 2.0 * std::atan(50.0)) < 1e-9);
    CHECK(r.error_estimate >= 0.0);
}

TEST_CASE("J0 matches the standard library on the real axis") {
    for (double x : {0.0, 0.3, 1.0, 2.404825557695773, 5.0, 12.0, 19.9, 20.1, 35.0, 80.0}) {
        const double ref = std::cyl_bessel_j(0.0, x);
        // the series loses digits to cancellation as |x| approaches 20
        const double tol = x <= 8.0 ? 1e-13 : 1e-9;
        CHECK(std::abs(nhd::bessel_j0(x).real() - ref) < tol);
        CHECK(std::abs(nhd::bessel_j0(-x).real() - ref) < tol);
        CHECK(nhd::bessel_j0(x).imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("J0 for complex arguments matches the integral representation") {
    for (cplx z : {cplx(2.4, 0.3), cplx(1.0, -2.0), cplx(-3.0, 1.5), cplx(10.0, 0.5), cplx(25.0, 1.0),
                   cplx(0.0, 4.0)}) {
        const cplx ref = oracle::bessel_j0(z);
        CHECK(std::abs(nhd::bessel_j0(z) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("first J0 zero constant") {
    CHECK(std::abs(std::cyl_bessel_j(0.0, nhd::kBesselJ0FirstZero)) < 1e-15);
}

}
