#pragma once

#include <utility>
#include <vector>

#include "cvforge/numerics.hpp"

namespace cvforge {

// Strength vector (lambda_m, mu_m, ..., lambda_1, mu_1); gates apply right
// to left, so the last printed pair acts first.  With repetitions r the
// vector is cycled r times with every entry divided by r.
struct ParamVector {
    std::vector<double> entries;
    int repetitions = 1;
};

// The four quadrature polynomials in t that fully characterize the
// Trotterized controlled-phase-rotation product up to global phase.
// pxx(0)=ppp(0)=1, pxp(0)=ppx(0)=0, and pxx*ppp - pxp*ppx = 1 identically.
struct QuadPolys {
    poly pxx, pxp, ppx, ppp;
};

struct QuadVals {
    double xx, xp, px, pp;
};

// First-mode momentum correction polynomials.
struct MomentumPolys {
    poly p1, p2, p3;
};

QuadPolys build_polys(const ParamVector& params);
QuadVals eval_polys(const QuadPolys& polys, double t);
MomentumPolys momentum_polys(const QuadPolys& polys);

// Max absolute coefficient of pxx*ppp - pxp*ppx - 1.
double identity_residual(const QuadPolys& polys);

// For each n = 1..order, the pair of Taylor-coefficient mismatches against
// the ideal rotation: odd n compares (pxp, ppx) against (sin, -sin), even n
// compares (pxx, ppp) against cos.
std::vector<std::pair<double, double>> order_condition_residuals(
    const ParamVector& params, int order);

// Max over sampled t in [0, t_max] of the largest entrywise deviation of
// (pxx, pxp, ppx, ppp)(t) from (cos t, sin t, -sin t, cos t).
double supnorm_error(const QuadPolys& polys, double t_max, int samples);

}  // namespace cvforge
