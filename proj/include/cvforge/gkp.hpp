#pragma once

#include <optional>
#include <string>
#include <utility>

#include "cvforge/focksim.hpp"
#include "cvforge/grid.hpp"

namespace cvforge {

enum class PeakSigns { Uniform, Alternating };

// Parameters of a Gaussian comb state: peaks of width 1/k spaced by
// `spacing` under an envelope of width k.  `delta` advances the meter phase,
// which shifts every peak by -delta*spacing/pi while the envelope stays
// centered.  Optional logical weights build alpha * comb + beta * (the same
// comb displaced by spacing/2, envelope traveling with the peaks).
struct GkpSpec {
    double spacing = 0.0;
    double k = 0.0;
    double delta = 0.0;
    PeakSigns signs = PeakSigns::Uniform;
    std::optional<std::pair<cplx, cplx>> weights;
};

// Half-width 1.5*(k + 3/k + spacing), 4096 points: envelope tails below 1e-9.
Grid1D default_gkp_grid(const GkpSpec& spec);

// Normalized comb wavefunction on the grid.  Throws if the grid is too small
// for the envelope or the weights are not normalized.
GridWavefunction gaussian_gkp(const GkpSpec& spec, const Grid1D& grid);

// |<a|b>|^2 / (|a|^2 |b|^2) by trapezoidal integration on a shared grid.
double grid_fidelity(const GridWavefunction& a, const GridWavefunction& b);

// W(x, p) = (1/pi) Int psi*(x+y) psi(x-y) e^{2ipy} dy, evaluated by FFT over
// y on the wavefunction's own grid and interpolated onto the output lattice.
// Ranges and point count follow the same inclusive-linspace convention as the
// Fock-side Wigner transform.
WignerGrid wigner_of_grid(const GridWavefunction& psi, double x_range, double p_range,
                          int points);

// Equivalent descriptions of one squeezing level: k = 10^(dB/20) and
// k = 2 t sqrt(n + 1/4) for the comb produced at gate time t.
struct SqueezingLevel {
    double k = 0.0;
    double db = 0.0;
    double n = 0.0;
};
enum class SqueezingBasis { Decibel, K, N };
SqueezingLevel squeezing_convert(double value, SqueezingBasis from, double t);

// Upper bound (2 / (pi k)) e^{-pi k^2 / 4} on the probability of confusing
// the two logical combs by a homodyne readout.
double misid_bound(double k);

std::string gkp_spec_to_json(const GkpSpec& spec);
GkpSpec gkp_spec_from_json(const std::string& text);

}  // namespace cvforge
