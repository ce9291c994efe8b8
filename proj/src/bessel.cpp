#include "nhd/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace nhd {

namespace {

using cplx = std::complex<double>;

cplx j0_series(cplx z) {
    const cplx q = -0.25 * z * z;
    cplx term = 1.0;
    cplx sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / static_cast<double>(k * k);
        sum += term;
        if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
    }
    return sum;
}

// Valid for Re z >= 0 and large |z|.
cplx j0_asymptotic(cplx z) {
    // a_k = prod_{j=1..k} (2j-1)^2 / (k! 8^k)
    cplx p = 1.0;
    cplx q = 0.0;
    double a = 1.0;
    cplx zpow = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
        a *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k);
        zpow *= z;
        const cplx term = a / zpow;
        const double mag = std::abs(term);
        if (mag > last) break; // asymptotic series started diverging
        last = mag;
        // k odd -> Q, k even -> P; signs alternate in pairs
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 1)
            q += -sign * term;
        else
            p += sign * term;
        if (mag < std::numeric_limits<double>::epsilon()) break;
    }
    const cplx chi = z - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

std::complex<double> bessel_j0(std::complex<double> z) {
    if (z.real() < 0.0) z = -z; // J0 is even
    if (std::abs(z) <= 20.0) return j0_series(z);
    return j0_asymptotic(z);
}

} // namespace nhd
