#pragma once

#include <complex>

namespace nhd {

// First zero of J0.
inline constexpr double kBesselJ0FirstZero = 2.404825557695773;

// J0 for complex argument. Power series for |z| <= 20, Hankel asymptotic
// expansion beyond.
std::complex<double> bessel_j0(std::complex<double> z);

} // namespace nhd
