#include "cvforge/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace cvforge {

double poly_eval(const poly& p, double t) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
    return acc;
}

poly poly_mul(const poly& a, const poly& b) {
    if (a.empty() || b.empty()) return {};
    poly c(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

poly poly_add(const poly& a, const poly& b) {
    poly c(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

poly poly_scale(const poly& a, double s) {
    poly c = a;
    for (double& v : c) v *= s;
    return c;
}

poly poly_deriv(const poly& a) {
    if (a.size() <= 1) return {};
    poly c(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) c[i - 1] = a[i] * double(i);
    return c;
}

void poly_trim(poly& a, double eps) {
    while (!a.empty() && std::abs(a.back()) <= eps) a.pop_back();
}

std::vector<double> hermite_functions(double x, int nmax) {
    std::vector<double> phi(nmax + 1);
    phi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (nmax >= 1) phi[1] = std::sqrt(2.0) * x * phi[0];
    for (int n = 2; n <= nmax; ++n)
        phi[n] = std::sqrt(2.0 / n) * x * phi[n - 1] -
                 std::sqrt(double(n - 1) / n) * phi[n - 2];
    return phi;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

std::vector<cplx> branch_sqrt_track(const std::vector<cplx>& a) {
    std::vector<cplx> r(a.size());
    if (a.empty()) return r;
    r[0] = std::sqrt(a[0]);
    for (size_t i = 1; i < a.size(); ++i) {
        double dphase = std::arg(a[i] / a[i - 1]);
        if (std::abs(dphase) > M_PI / 2)
            throw std::runtime_error("branch_sqrt_track: phase step exceeds pi/2");
        cplx cand = std::sqrt(a[i]);
        // Pick the root closest in phase to the previous one.
        if (std::abs(cand - r[i - 1]) > std::abs(-cand - r[i - 1])) cand = -cand;
        r[i] = cand;
    }
    return r;
}

std::vector<double> unwrap_from(const std::vector<double>& phase, int j0) {
    std::vector<double> out(phase.size());
    if (phase.empty()) return out;
    out[j0] = phase[j0];
    auto step = [](double prev, double raw) {
        double d = raw - prev;
        d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
        return prev + d;
    };
    for (int j = j0 + 1; j < int(phase.size()); ++j) out[j] = step(out[j - 1], phase[j]);
    for (int j = j0 - 1; j >= 0; --j) out[j] = step(out[j + 1], phase[j]);
    return out;
}

}  // namespace cvforge
