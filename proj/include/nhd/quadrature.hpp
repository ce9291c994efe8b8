#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace nhd::quad {

using cplx = std::complex<double>;

struct Result {
    cplx value{};
    double error_estimate{0.0};
};

// Adaptive Simpson on [a, b] for a complex integrand. The interval is first
// split into `initial_panels` equal pieces; each piece is refined until the
// Richardson estimate drops below its share of `tolerance`.
Result adaptive_simpson(const std::function<cplx(double)>& f, double a, double b,
                        double tolerance, int initial_panels = 64, int max_depth = 40);

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes and weights via Newton iteration on P_n.
GaussRule gauss_legendre(int n);

// Composite Gauss-Legendre on [a, b] with `panels` panels of `rule`.
cplx composite_gauss(const std::function<cplx(double)>& f, double a, double b,
                     int panels, const GaussRule& rule);

} // namespace nhd::quad
