#pragma once

#include <complex>
#include <vector>

namespace cvforge {

using cplx = std::complex<double>;

// Polynomial coefficients in ascending powers. Trailing zeros are elided so
// the degree is implied by size(); the zero polynomial is an empty vector.
using poly = std::vector<double>;

double poly_eval(const poly& p, double t);
poly poly_mul(const poly& a, const poly& b);
poly poly_add(const poly& a, const poly& b);
poly poly_scale(const poly& a, double s);
poly poly_deriv(const poly& a);
void poly_trim(poly& a, double eps = 0.0);

// Harmonic-oscillator eigenfunctions phi_0..phi_nmax at one point, using the
// stable three-term recurrence.  phi_n(x) = (pi^-1/4 / sqrt(2^n n!)) H_n(x) e^{-x^2/2}.
std::vector<double> hermite_functions(double x, int nmax);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// ln(n!)
double log_factorial(int n);

// Continuous square root along a parameter path: tracks the branch so the
// result has no sign flips between neighbouring entries.  Throws if the
// phase of the input jumps by more than pi/2 between neighbours, since the
// branch is then ambiguous.
std::vector<cplx> branch_sqrt_track(const std::vector<cplx>& a);

// Phase unwrap relative to the entry at index j0 (kept in (-pi, pi]).
std::vector<double> unwrap_from(const std::vector<double>& phase, int j0);

}  // namespace cvforge
