#pragma once

// Independent reference computations. Nothing here calls into the library's
// numerics, so agreement is a real cross-check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline cplx trapezoid(const std::function<cplx(double)>& f, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    cplx sum = 0.5 * (f(a) + f(b));
    for (long i = 1; i < n; ++i) sum += f(a + h * static_cast<double>(i));
    return h * sum;
}

// J0(z) = (1/pi) int_0^pi cos(z sin th) d th; trapezoid is spectrally accurate
// for this periodic integrand.
inline cplx bessel_j0(cplx z, int n = 400) {
    const double pi = std::numbers::pi;
    cplx sum{};
    for (int i = 0; i < n; ++i) {
        const double th = pi * (i + 0.5) / n;
        sum += std::cos(z * std::sin(th));
    }
    return sum / static_cast<double>(n);
}

using Matrix = std::vector<std::vector<cplx>>;

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix c(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// exp(-i H t) v by scaling and squaring a Taylor series.
inline std::vector<cplx> propagate(const Matrix& h, double t, const std::vector<cplx>& v) {
    const std::size_t n = h.size();
    double norm = 0.0;
    for (const auto& row : h) {
        double s = 0.0;
        for (auto x : row) s += std::abs(x);
        norm = std::max(norm, s);
    }
    int squarings = 0;
    while (norm * std::abs(t) / std::pow(2.0, squarings) > 0.1) ++squarings;
    const cplx scale = cplx(0.0, -t) / std::pow(2.0, squarings);

    Matrix step(n, std::vector<cplx>(n)), term(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i) step[i][i] = term[i][i] = 1.0;
    Matrix a(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = scale * h[i][j];
    for (int k = 1; k <= 20; ++k) {
        term = multiply(term, a);
        for (auto& row : term)
            for (auto& x : row) x /= static_cast<double>(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) step[i][j] += term[i][j];
    }
    for (int s = 0; s < squarings; ++s) step = multiply(step, step);

    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += step[i][j] * v[j];
    return out;
}

// Edge site + N chain sites with constant coupling J on the first bond.
inline Matrix edge_chain_hamiltonian(int chain_length, double kappa, cplx hopping, double omega_a) {
    const std::size_t n = static_cast<std::size_t>(chain_length) + 1;
    Matrix h(n, std::vector<cplx>(n));
    h[0][0] = omega_a;
    h[0][1] = h[1][0] = -hopping;
    for (std::size_t i = 1; i + 1 < n; ++i) h[i][i + 1] = h[i + 1][i] = -kappa;
    return h;
}

} // namespace oracle
