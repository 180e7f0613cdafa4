#include "cvforge/gkp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvforge/grid.hpp"

namespace cvforge {
namespace {

void validate(const GkpSpec& spec) {
    if (!(spec.spacing > 0.0)) throw std::invalid_argument("gkp: spacing must be positive");
    if (!(spec.k > 0.0)) throw std::invalid_argument("gkp: squeezing k must be positive");
    if (spec.weights) {
        const double total =
            std::norm(spec.weights->first) + std::norm(spec.weights->second);
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("gkp: logical weights must satisfy |a|^2+|b|^2=1");
    }
}

// Peak comb with centered envelope.  Each peak sits at spacing*(s + offset)
// and carries the envelope weight of its own (possibly displaced) position;
// `travel` shifts the evaluation point only, so a traveling peak keeps the
// weight of its origin.
cplx comb_value(const GkpSpec& spec, double x, double offset, double travel) {
    const double d = spec.spacing;
    const double k = spec.k;
    const int smax = int(std::ceil(3.0 * k / d)) + 2;
    cplx acc = 0.0;
    for (int s = -smax; s <= smax; ++s) {
        const double xs = d * (s + offset);
        const double weight = std::exp(-xs * xs / (2.0 * k * k));
        const double sign = (spec.signs == PeakSigns::Alternating && (s & 1)) ? -1.0 : 1.0;
        const double u = (x + travel) - xs;
        acc += sign * weight * std::exp(-k * k * u * u / 2.0);
    }
    return acc;
}

}  // namespace

Grid1D default_gkp_grid(const GkpSpec& spec) {
    validate(spec);
    return Grid1D{4096, 1.5 * (spec.k + 3.0 / spec.k + spec.spacing)};
}

GridWavefunction gaussian_gkp(const GkpSpec& spec, const Grid1D& grid) {
    validate(spec);
    const double required = 2.0 * spec.k + std::min(spec.spacing, spec.k);
    if (grid.ext < required)
        throw std::invalid_argument("gkp: grid extent too small for the comb envelope");

    // delta advances every peak by -delta*spacing/pi under the fixed envelope.
    const double offset = -spec.delta / M_PI;
    const cplx alpha = spec.weights ? spec.weights->first : cplx(1.0);
    const cplx beta = spec.weights ? spec.weights->second : cplx(0.0);

    GridWavefunction psi{grid, std::vector<cplx>(size_t(grid.n))};
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        cplx v = alpha * comb_value(spec, x, offset, 0.0);
        if (beta != cplx(0.0)) v += beta * comb_value(spec, x, offset, spec.spacing / 2.0);
        psi.amp[size_t(j)] = v;
    }
    const double nrm = std::sqrt(grid_norm_sq(psi));
    if (!(nrm > 0.0)) throw std::runtime_error("gkp: comb vanished on the grid");
    for (cplx& v : psi.amp) v /= nrm;
    return psi;
}

double grid_fidelity(const GridWavefunction& a, const GridWavefunction& b) {
    if (a.grid.n != b.grid.n || std::abs(a.grid.ext - b.grid.ext) > 1e-12 * (1.0 + a.grid.ext))
        throw std::invalid_argument("grid_fidelity: wavefunctions live on different grids");
    const double na = grid_norm_sq(a);
    const double nb = grid_norm_sq(b);
    if (!(na > 0.0) || !(nb > 0.0))
        throw std::invalid_argument("grid_fidelity: zero-norm wavefunction");
    return std::norm(grid_inner(a, b)) / (na * nb);
}

WignerGrid wigner_of_grid(const GridWavefunction& psi, double x_range, double p_range,
                          int points) {
    if (points < 2) throw std::invalid_argument("wigner_of_grid: need at least 2 points");
    const Grid1D& g = psi.grid;
    const int n = g.n;
    if (n % 2 != 0) throw std::invalid_argument("wigner_of_grid: grid size must be even");

    WignerGrid out;
    out.x_points = out.p_points = points;
    out.x_min = -x_range;
    out.x_max = x_range;
    out.p_min = -p_range;
    out.p_max = p_range;
    out.w.assign(size_t(points) * size_t(points), 0.0);

    // W(x_i, p) over the conjugate grid for one input row i.  With y_j = x_j
    // both psi arguments land on grid points, so a single inverse DFT of
    // f_j = conj(psi[i+j-n/2]) psi[i-j+n/2] gives W at p_k = xi_k / 2.
    // Zero-padding by `pad` refines the p sampling so the bilinear
    // interpolation below stays well under the Wigner feature scale.
    const int pad = 4;
    const int m = n * pad;
    Fourier fft(m);
    auto row_transform = [&](int i) {
        std::vector<cplx> f(size_t(m), cplx(0.0));
        for (int j = 0; j < n; ++j) {
            const int jp = i + j - n / 2;
            const int jm = i - j + n / 2;
            if (jp < 0 || jp >= n || jm < 0 || jm >= n) continue;
            f[size_t(j)] = std::conj(psi.amp[size_t(jp)]) * psi.amp[size_t(jm)];
        }
        fft.backward(f.data());
        std::vector<double> w(size_t(m));
        const double dkappa = g.dxi() / pad;
        for (int k = 0; k < m; ++k) {
            const double kappa = (k - m / 2) * dkappa;
            const cplx ramp = std::polar(1.0, -kappa * g.ext);
            w[size_t(k)] = (g.dx() / M_PI) * std::real(ramp * f[size_t((k + m / 2) % m)]);
        }
        return w;
    };

    std::vector<std::vector<double>> rows(size_t(n));
    auto row = [&](int i) -> const std::vector<double>& {
        if (rows[size_t(i)].empty()) rows[size_t(i)] = row_transform(i);
        return rows[size_t(i)];
    };

    const double dp_dense = g.dxi() / (2.0 * pad);
    for (int i = 0; i < points; ++i) {
        const double x = out.x(i);
        const double fi = (x + g.ext) / g.dx();
        const int i0 = int(std::floor(fi));
        if (i0 < 0 || i0 + 1 >= n) continue;
        const double tx = fi - i0;
        for (int j = 0; j < points; ++j) {
            const double p = out.p(j);
            const double fk = p / dp_dense + m / 2.0;
            const int k0 = int(std::floor(fk));
            if (k0 < 0 || k0 + 1 >= m) continue;
            const double tp = fk - k0;
            const double w00 = row(i0)[size_t(k0)], w01 = row(i0)[size_t(k0 + 1)];
            const double w10 = row(i0 + 1)[size_t(k0)], w11 = row(i0 + 1)[size_t(k0 + 1)];
            out.w[size_t(i) * size_t(points) + size_t(j)] =
                (1.0 - tx) * ((1.0 - tp) * w00 + tp * w01) +
                tx * ((1.0 - tp) * w10 + tp * w11);
        }
    }
    return out;
}

SqueezingLevel squeezing_convert(double value, SqueezingBasis from, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("squeezing_convert: gate time must be positive");
    SqueezingLevel out;
    switch (from) {
        case SqueezingBasis::K:
            out.k = value;
            break;
        case SqueezingBasis::Decibel:
            out.k = std::pow(10.0, value / 20.0);
            break;
        case SqueezingBasis::N:
            if (!(value >= 0.0))
                throw std::invalid_argument("squeezing_convert: photon index must be >= 0");
            out.k = 2.0 * t * std::sqrt(value + 0.25);
            break;
    }
    if (!(out.k > 0.0)) throw std::invalid_argument("squeezing_convert: k must be positive");
    out.db = 20.0 * std::log10(out.k);
    const double half = out.k / (2.0 * t);
    out.n = half * half - 0.25;
    return out;
}

double misid_bound(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("misid_bound: k must be positive");
    return 2.0 / (M_PI * k) * std::exp(-M_PI * k * k / 4.0);
}

std::string gkp_spec_to_json(const GkpSpec& spec) {
    nlohmann::json j;
    j["spacing"] = spec.spacing;
    j["k"] = spec.k;
    j["delta"] = spec.delta;
    j["signs"] = spec.signs == PeakSigns::Alternating ? "alternating" : "uniform";
    if (spec.weights) {
        j["weights"] = {{spec.weights->first.real(), spec.weights->first.imag()},
                        {spec.weights->second.real(), spec.weights->second.imag()}};
    }
    return j.dump(2);
}

GkpSpec gkp_spec_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    GkpSpec spec;
    spec.spacing = j.at("spacing").get<double>();
    spec.k = j.at("k").get<double>();
    spec.delta = j.value("delta", 0.0);
    const std::string signs = j.value("signs", "uniform");
    if (signs == "alternating")
        spec.signs = PeakSigns::Alternating;
    else if (signs == "uniform")
        spec.signs = PeakSigns::Uniform;
    else
        throw std::invalid_argument("gkp: unknown sign pattern '" + signs + "'");
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        spec.weights = {{cplx(w.at(0).at(0).get<double>(), w.at(0).at(1).get<double>())},
                        {cplx(w.at(1).at(0).get<double>(), w.at(1).at(1).get<double>())}};
    }
    validate(spec);
    return spec;
}

}  // namespace cvforge
