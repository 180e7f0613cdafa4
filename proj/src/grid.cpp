#include "cvforge/grid.hpp"

#include <fftw3.h>

#include <cstring>

namespace cvforge {

double grid_norm_sq(const GridWavefunction& a) {
    double s = 0.0;
    for (const cplx& v : a.amp) s += std::norm(v);
    return s * a.grid.dx();
}

cplx grid_inner(const GridWavefunction& a, const GridWavefunction& b) {
    cplx s = 0.0;
    for (size_t j = 0; j < a.amp.size(); ++j) s += std::conj(a.amp[j]) * b.amp[j];
    return s * a.grid.dx();
}

Fourier::Fourier(int n) : n_(n) {
    buf_ = fftw_alloc_complex(n);
    auto* b = static_cast<fftw_complex*>(buf_);
    plan_fwd_ = fftw_plan_dft_1d(n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fourier::~Fourier() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_);
}

void Fourier::forward(cplx* data) const {
    std::memcpy(buf_, data, sizeof(cplx) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(data, buf_, sizeof(cplx) * n_);
}

void Fourier::backward(cplx* data) const {
    std::memcpy(buf_, data, sizeof(cplx) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    std::memcpy(data, buf_, sizeof(cplx) * n_);
}

void Fourier::sym_forward(const Grid1D& g, cplx* data) const {
    // e^{i xi_k x_j} = e^{2pi i jk/n} (-1)^j (-1)^k i^n for this grid layout,
    // so the kernel reduces to one unnormalized inverse DFT with phase ramps.
    const cplx c = std::polar(g.dx() / std::sqrt(2.0 * M_PI), M_PI / 4.0);
    for (int j = 1; j < n_; j += 2) data[j] = -data[j];
    backward(data);
    for (int k = 0; k < n_; ++k) data[k] *= (k & 1) ? -c : c;
}

void Fourier::sym_backward(const Grid1D& g, cplx* data) const {
    const cplx c = std::polar(g.dxi() / std::sqrt(2.0 * M_PI), -M_PI / 4.0);
    for (int k = 1; k < n_; k += 2) data[k] = -data[k];
    forward(data);
    for (int j = 0; j < n_; ++j) data[j] *= (j & 1) ? -c : c;
}

Fourier2D::Fourier2D(int n0, int n1) : n0_(n0), n1_(n1) {
    buf_ = fftw_alloc_complex(size_t(n0) * n1);
    auto* b = static_cast<fftw_complex*>(buf_);
    // Axis 1: n0 contiguous transforms of length n1.
    plans_[0] = fftw_plan_many_dft(1, &n1_, n0_, b, nullptr, 1, n1_, b, nullptr, 1,
                                   n1_, FFTW_FORWARD, FFTW_ESTIMATE);
    plans_[1] = fftw_plan_many_dft(1, &n1_, n0_, b, nullptr, 1, n1_, b, nullptr, 1,
                                   n1_, FFTW_BACKWARD, FFTW_ESTIMATE);
    // Axis 0: n1 strided transforms of length n0.
    plans_[2] = fftw_plan_many_dft(1, &n0_, n1_, b, nullptr, n1_, 1, b, nullptr, n1_,
                                   1, FFTW_FORWARD, FFTW_ESTIMATE);
    plans_[3] = fftw_plan_many_dft(1, &n0_, n1_, b, nullptr, n1_, 1, b, nullptr, n1_,
                                   1, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fourier2D::~Fourier2D() {
    for (void* p : plans_) fftw_destroy_plan(static_cast<fftw_plan>(p));
    fftw_free(buf_);
}

void Fourier2D::run(int which, cplx* data) const {
    const size_t bytes = sizeof(cplx) * size_t(n0_) * n1_;
    std::memcpy(buf_, data, bytes);
    fftw_execute(static_cast<fftw_plan>(plans_[which]));
    std::memcpy(data, buf_, bytes);
}

void Fourier2D::forward_axis1(cplx* data) const { run(0, data); }
void Fourier2D::backward_axis1(cplx* data) const { run(1, data); }
void Fourier2D::forward_axis0(cplx* data) const { run(2, data); }
void Fourier2D::backward_axis0(cplx* data) const { run(3, data); }

}  // namespace cvforge
