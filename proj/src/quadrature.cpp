#include "nhd/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nhd::quad {

namespace {

struct Panel {
    double a, b;
    cplx fa, fm, fb;
    cplx whole;
};

void refine(const std::function<cplx(double)>& f, const Panel& p, double tol, int depth,
            Result& acc) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const cplx flm = f(lm);
    const cplx frm = f(rm);
    const double h = p.b - p.a;
    const cplx left = (h / 12.0) * (p.fa + 4.0 * flm + p.fm);
    const cplx right = (h / 12.0) * (p.fm + 4.0 * frm + p.fb);
    const cplx delta = left + right - p.whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        acc.value += left + right + delta / 15.0;
        acc.error_estimate += std::abs(delta) / 15.0;
        return;
    }
    refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1, acc);
    refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1, acc);
}

} // namespace

Result adaptive_simpson(const std::function<cplx(double)>& f, double a, double b,
                        double tolerance, int initial_panels, int max_depth) {
    Result acc;
    if (a == b) return acc;
    if (initial_panels < 1) initial_panels = 1;
    const double h = (b - a) / initial_panels;
    const double panel_tol = tolerance / initial_panels;
    cplx fa = f(a);
    for (int i = 0; i < initial_panels; ++i) {
        const double pa = a + i * h;
        const double pb = (i + 1 == initial_panels) ? b : a + (i + 1) * h;
        const double pm = 0.5 * (pa + pb);
        const cplx fm = f(pm);
        const cplx fb = f(pb);
        const cplx whole = ((pb - pa) / 6.0) * (fa + 4.0 * fm + fb);
        refine(f, {pa, pb, fa, fm, fb, whole}, panel_tol, max_depth, acc);
        fa = fb;
    }
    return acc;
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

cplx composite_gauss(const std::function<cplx(double)>& f, double a, double b, int panels,
                     const GaussRule& rule) {
    const double h = (b - a) / panels;
    cplx sum{};
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        cplx part{};
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            part += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
        sum += 0.5 * h * part;
    }
    return sum;
}

} // namespace nhd::quad
