#include "cvforge/polycore.hpp"

#include <cmath>
#include <stdexcept>

namespace cvforge {

namespace {

// Shift coefficients up by k powers of t (multiply by t^k).
poly poly_shift(const poly& a, int k) {
    if (a.empty()) return {};
    poly c(a.size() + k, 0.0);
    for (size_t i = 0; i < a.size(); ++i) c[i + k] = a[i];
    return c;
}

}  // namespace

QuadPolys build_polys(const ParamVector& params) {
    const size_t len = params.entries.size();
    if (len % 2 != 0)
        throw std::invalid_argument("build_polys: entries must have even length");
    if (params.repetitions < 1)
        throw std::invalid_argument("build_polys: repetitions must be positive");

    const int m = int(len) / 2;
    const double r = double(params.repetitions);

    QuadPolys q;
    q.pxx = {1.0};
    q.ppp = {1.0};

    for (int rep = 0; rep < params.repetitions; ++rep) {
        // Pair j = 1 (the last printed) acts first.
        for (int j = 0; j < m; ++j) {
            const double lam = params.entries[2 * (m - 1 - j)] / r;
            const double mu = params.entries[2 * (m - 1 - j) + 1] / r;
            poly nxx = poly_add(poly_add(q.pxx, poly_scale(poly_shift(q.pxx, 2), -lam * mu)),
                                poly_scale(poly_shift(q.pxp, 1), -lam));
            poly nxp = poly_add(q.pxp, poly_scale(poly_shift(q.pxx, 1), mu));
            poly npx = poly_add(poly_add(q.ppx, poly_scale(poly_shift(q.ppx, 2), -lam * mu)),
                                poly_scale(poly_shift(q.ppp, 1), -lam));
            poly npp = poly_add(q.ppp, poly_scale(poly_shift(q.ppx, 1), mu));
            q.pxx = std::move(nxx);
            q.pxp = std::move(nxp);
            q.ppx = std::move(npx);
            q.ppp = std::move(npp);
        }
    }
    poly_trim(q.pxx);
    poly_trim(q.pxp);
    poly_trim(q.ppx);
    poly_trim(q.ppp);
    return q;
}

QuadVals eval_polys(const QuadPolys& polys, double t) {
    return {poly_eval(polys.pxx, t), poly_eval(polys.pxp, t), poly_eval(polys.ppx, t),
            poly_eval(polys.ppp, t)};
}

MomentumPolys momentum_polys(const QuadPolys& polys) {
    const poly dxx = poly_deriv(polys.pxx);
    const poly dxp = poly_deriv(polys.pxp);
    const poly dpx = poly_deriv(polys.ppx);
    const poly dpp = poly_deriv(polys.ppp);
    MomentumPolys mp;
    mp.p1 = poly_add(poly_mul(dxx, polys.ppx), poly_scale(poly_mul(polys.pxx, dpx), -1.0));
    mp.p2 = poly_add(poly_mul(dxp, polys.ppp), poly_scale(poly_mul(polys.pxp, dpp), -1.0));
    mp.p3 = poly_add(poly_mul(dxx, polys.ppp), poly_scale(poly_mul(polys.pxp, dpx), -1.0));
    poly_trim(mp.p1, 0.0);
    poly_trim(mp.p2, 0.0);
    poly_trim(mp.p3, 0.0);
    return mp;
}

double identity_residual(const QuadPolys& polys) {
    poly prod = poly_add(poly_mul(polys.pxx, polys.ppp),
                         poly_scale(poly_mul(polys.pxp, polys.ppx), -1.0));
    if (prod.empty()) prod = {0.0};
    prod[0] -= 1.0;
    double r = 0.0;
    for (double c : prod) r = std::max(r, std::abs(c));
    return r;
}

std::vector<std::pair<double, double>> order_condition_residuals(const ParamVector& params,
                                                                 int order) {
    if (order < 1) throw std::invalid_argument("order_condition_residuals: order >= 1");
    const QuadPolys q = build_polys(params);
    auto coeff = [](const poly& p, int n) {
        return n < int(p.size()) ? p[n] : 0.0;
    };
    std::vector<std::pair<double, double>> res;
    double fact = 1.0;
    for (int n = 1; n <= order; ++n) {
        fact *= n;
        if (n % 2 == 1) {
            const double s = ((n - 1) / 2 % 2 == 0 ? 1.0 : -1.0) / fact;
            res.emplace_back(std::abs(coeff(q.pxp, n) - s), std::abs(coeff(q.ppx, n) + s));
        } else {
            const double c = (n / 2 % 2 == 0 ? 1.0 : -1.0) / fact;
            res.emplace_back(std::abs(coeff(q.pxx, n) - c), std::abs(coeff(q.ppp, n) - c));
        }
    }
    return res;
}

double supnorm_error(const QuadPolys& polys, double t_max, int samples) {
    if (!(t_max > 0.0) || samples < 2)
        throw std::invalid_argument("supnorm_error: t_max > 0 and samples >= 2");
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = t_max * double(i) / double(samples - 1);
        const QuadVals v = eval_polys(polys, t);
        const double c = std::cos(t), s = std::sin(t);
        double dev = std::abs(v.xx - c);
        dev = std::max(dev, std::abs(v.xp - s));
        dev = std::max(dev, std::abs(v.px + s));
        dev = std::max(dev, std::abs(v.pp - c));
        worst = std::max(worst, dev);
    }
    return worst;
}

}  // namespace cvforge
