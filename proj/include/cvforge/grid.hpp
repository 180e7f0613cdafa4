#pragma once

#include <vector>

#include "cvforge/numerics.hpp"

namespace cvforge {

// Uniform position grid x_j = -ext + j*dx, j = 0..n-1, dx = 2*ext/n (the
// right endpoint is excluded so the FFT sees an exactly periodic domain).
struct Grid1D {
    int n = 0;
    double ext = 0.0;

    double dx() const { return 2.0 * ext / n; }
    double x(int j) const { return -ext + j * dx(); }
    double dxi() const { return 2.0 * M_PI / (n * dx()); }
    // Conjugate grid in ascending order, xi_k = (k - n/2)*dxi.
    double xi(int k) const { return (k - n / 2) * dxi(); }
    // Conjugate value in unshifted FFT index order.
    double freq(int k) const { return (k < (n + 1) / 2 ? k : k - n) * dxi(); }
};

struct GridWavefunction {
    Grid1D grid;
    std::vector<cplx> amp;
};

double grid_norm_sq(const GridWavefunction& a);
cplx grid_inner(const GridWavefunction& a, const GridWavefunction& b);

// Cached FFTW plans for one transform size.  forward is the unnormalized
// DFT sum_j e^{-2pi i jk/n}; backward its unnormalized inverse.
class Fourier {
  public:
    explicit Fourier(int n);
    ~Fourier();
    Fourier(const Fourier&) = delete;
    Fourier& operator=(const Fourier&) = delete;

    void forward(cplx* data) const;
    void backward(cplx* data) const;

    // Unitary Fourier transform from the position grid to the ascending
    // conjugate grid, out_k = e^{i pi/4} (2pi)^{-1/2} sum_j e^{+i xi_k x_j} psi_j dx,
    // and its inverse.  Both are realized with one FFT plus phase ramps.
    void sym_forward(const Grid1D& g, cplx* data) const;
    void sym_backward(const Grid1D& g, cplx* data) const;

    int size() const { return n_; }

  private:
    int n_;
    void* buf_;
    void* plan_fwd_;
    void* plan_bwd_;
};

// FFT along one axis of a dense row-major (n0 x n1) array.
class Fourier2D {
  public:
    Fourier2D(int n0, int n1);
    ~Fourier2D();
    Fourier2D(const Fourier2D&) = delete;
    Fourier2D& operator=(const Fourier2D&) = delete;

    void forward_axis0(cplx* data) const;
    void backward_axis0(cplx* data) const;
    void forward_axis1(cplx* data) const;
    void backward_axis1(cplx* data) const;

  private:
    int n0_, n1_;
    void* buf_;
    void* plans_[4];
    void run(int which, cplx* data) const;
};

}  // namespace cvforge
