#include "cvforge/focksim.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace cvforge {

namespace {

Mat ladder(int d) {
    Mat a = Mat::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Mat position_op(int d) {
    Mat a = ladder(d);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

// Cache of single-mode gate matrices keyed by kind, parameter and dimension.
struct GateKey {
    int kind;
    double p0, p1;
    int d;
    bool operator<(const GateKey& o) const {
        return std::tie(kind, p0, p1, d) < std::tie(o.kind, o.p0, o.p1, o.d);
    }
};

std::map<GateKey, Mat> g_cache;
std::mutex g_cache_mutex;

Mat cached(const GateKey& key, Mat (*build)(const GateKey&)) {
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    Mat m = build(key);
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    return g_cache.emplace(key, std::move(m)).first->second;
}

Mat single_mode_matrix(const Gate& g, int d) {
    switch (g.kind) {
        case GateKind::Rotate: {
            Mat u = Mat::Zero(d, d);
            for (int n = 0; n < d; ++n) u(n, n) = std::polar(1.0, g.params[0] * n);
            return u;
        }
        case GateKind::CubicPhase:
            return cached({0, g.params[0], 0.0, d}, [](const GateKey& k) {
                Mat x = position_op(k.d);
                Mat gen = cplx(0.0, 1.0) * k.p0 * (x * x * x);
                return Mat(gen.exp());
            });
        case GateKind::Squeeze:
            return cached({1, g.params[0], 0.0, d}, [](const GateKey& k) {
                Mat a = ladder(k.d);
                Mat gen = (k.p0 / 2.0) * (a * a - (a * a).adjoint().eval());
                return Mat(gen.exp());
            });
        case GateKind::Displace:
            return cached({2, g.params[0], g.params[1], d}, [](const GateKey& k) {
                Mat a = ladder(k.d);
                cplx alpha(k.p0, k.p1);
                Mat gen = alpha * a.adjoint() - std::conj(alpha) * a;
                return Mat(gen.exp());
            });
        default:
            throw std::logic_error("not a single-mode gate");
    }
}

// Beam splitter e^{s(a_k a_l^+ - a_k^+ a_l)} restricted to one total-photon
// block; the basis is |j, n-j> with j the mode-k count, j = lo..hi.
struct BsBlocks {
    std::vector<Mat> blocks;  // indexed by total photon number n
    std::vector<int> lo;
};

std::map<std::pair<double, int>, BsBlocks> g_bs_cache;

const BsBlocks& bs_blocks(double s, int d) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_bs_cache.find({s, d});
    if (it != g_bs_cache.end()) return it->second;

    BsBlocks out;
    const int nmax = d - 1;
    for (int n = 0; n <= 2 * nmax; ++n) {
        const int lo = std::max(0, n - nmax), hi = std::min(n, nmax);
        const int size = hi - lo + 1;
        Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
        for (int j = lo; j <= hi; ++j) {
            if (j - 1 >= lo) {
                // a_k a_l^+ |j, n-j> = sqrt(j (n-j+1)) |j-1, n-j+1>
                gen(j - 1 - lo, j - lo) += std::sqrt(double(j) * (n - j + 1));
            }
            if (j + 1 <= hi) {
                gen(j + 1 - lo, j - lo) -= std::sqrt(double(j + 1) * (n - j));
            }
        }
        // exp(s*gen) of the antisymmetric block stays orthogonal.
        Eigen::MatrixXd u = (s * gen).exp();
        out.blocks.push_back(u.cast<cplx>());
        out.lo.push_back(lo);
    }
    return g_bs_cache.emplace(std::make_pair(s, d), std::move(out)).first->second;
}

size_t pow_int(int base, int e) {
    size_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

// In-place matrix action along one tensor axis of a row-major array.
void apply_axis(cplx* data, size_t total, int d, size_t stride, const Mat& u) {
    std::vector<cplx> scratch(d);
    const size_t inner = stride;
    const size_t outer = total / (inner * d);
    for (size_t o = 0; o < outer; ++o) {
        cplx* base = data + o * d * inner;
        for (size_t i = 0; i < inner; ++i) {
            cplx* p = base + i;
            for (int n = 0; n < d; ++n) scratch[n] = p[n * inner];
            for (int rr = 0; rr < d; ++rr) {
                cplx acc = 0.0;
                for (int cc = 0; cc < d; ++cc) acc += u(rr, cc) * scratch[cc];
                p[rr * inner] = acc;
            }
        }
    }
}

// Same with the conjugate matrix (for density columns).
void apply_axis_conj(cplx* data, size_t total, int d, size_t stride, const Mat& u) {
    std::vector<cplx> scratch(d);
    const size_t inner = stride;
    const size_t outer = total / (inner * d);
    for (size_t o = 0; o < outer; ++o) {
        cplx* base = data + o * d * inner;
        for (size_t i = 0; i < inner; ++i) {
            cplx* p = base + i;
            for (int n = 0; n < d; ++n) scratch[n] = p[n * inner];
            for (int rr = 0; rr < d; ++rr) {
                cplx acc = 0.0;
                for (int cc = 0; cc < d; ++cc) acc += std::conj(u(rr, cc)) * scratch[cc];
                p[rr * inner] = acc;
            }
        }
    }
}

// Beam-splitter action on two tensor axes via total-photon blocks.
void apply_bs(cplx* data, size_t total, int d, size_t stride_k, size_t stride_l,
              const BsBlocks& bs, bool conj) {
    const int nmax = d - 1;
    // Enumerate positions with both target axes at index zero.
    std::vector<size_t> bases;
    for (size_t pos = 0; pos < total; ++pos) {
        const int jk = int(pos / stride_k) % d;
        const int jl = int(pos / stride_l) % d;
        if (jk == 0 && jl == 0) bases.push_back(pos);
    }
    std::vector<cplx> scratch(d);
    for (size_t base : bases) {
        for (int n = 0; n <= 2 * nmax; ++n) {
            const Mat& u = bs.blocks[n];
            const int lo = bs.lo[n];
            const int size = int(u.rows());
            for (int r = 0; r < size; ++r) {
                const int j = lo + r;
                scratch[r] = data[base + j * stride_k + size_t(n - j) * stride_l];
            }
            for (int r = 0; r < size; ++r) {
                cplx acc = 0.0;
                for (int c = 0; c < size; ++c)
                    acc += (conj ? std::conj(u(r, c)) : u(r, c)) * scratch[c];
                const int j = lo + r;
                data[base + j * stride_k + size_t(n - j) * stride_l] = acc;
            }
        }
    }
}

}  // namespace

FockState::FockState(int arity, int n_max) : arity_(arity), n_max_(n_max) {
    amp_ = Vec::Zero(Eigen::Index(pow_int(n_max + 1, arity)));
}

cplx& FockState::at(std::initializer_list<int> ns) {
    size_t idx = 0;
    for (int n : ns) idx = idx * dim() + n;
    return amp_[Eigen::Index(idx)];
}

FockState FockState::vacuum(int arity, int n_max) {
    FockState s(arity, n_max);
    s.amp_[0] = 1.0;
    return s;
}

FockState FockState::fock(int arity, int n_max, std::initializer_list<int> ns) {
    FockState s(arity, n_max);
    s.at(ns) = 1.0;
    return s;
}

FockState FockState::coherent(cplx alpha, int n_max) {
    if (alpha == cplx(0.0)) return vacuum(1, n_max);
    FockState s(1, n_max);
    const double lognorm = -0.5 * std::norm(alpha);
    for (int n = 0; n <= n_max; ++n) {
        const double mag = std::exp(lognorm + n * std::log(std::abs(alpha)) -
                                    0.5 * log_factorial(n));
        s.amp_[n] = std::polar(mag, n * std::arg(alpha));
    }
    return s;
}

FockDensity::FockDensity(int arity, int n_max) : arity_(arity), n_max_(n_max) {
    const Eigen::Index d = Eigen::Index(pow_int(n_max + 1, arity));
    rho_ = Mat::Zero(d, d);
}

FockDensity::FockDensity(const FockState& psi)
    : arity_(psi.arity()), n_max_(psi.n_max()) {
    rho_ = psi.amp() * psi.amp().adjoint();
}

void apply_gate(FockState& psi, const Gate& g) {
    const int d = psi.dim();
    const size_t total = size_t(psi.amp().size());
    auto stride_of = [&](int mode) { return pow_int(d, psi.arity() - 1 - mode); };
    switch (g.kind) {
        case GateKind::BeamSplitter: {
            const BsBlocks& bs = bs_blocks(g.params[0], d);
            apply_bs(psi.amp().data(), total, d, stride_of(g.modes[0]),
                     stride_of(g.modes[1]), bs, false);
            return;
        }
        case GateKind::LossMarker:
        case GateKind::HomodyneMarker:
            throw std::logic_error("marker gates are handled by run_circuit");
        default: {
            Mat u = single_mode_matrix(g, d);
            apply_axis(psi.amp().data(), total, d, stride_of(g.modes[0]), u);
            return;
        }
    }
}

void apply_gate(FockDensity& rho, const Gate& g) {
    const int d = rho.dim();
    const size_t side = size_t(rho.rho().rows());
    const size_t total = side * side;
    // The column-major matrix is, as flat memory, a tensor whose slowest axes
    // index the bra modes and whose fastest index the ket modes.  U rho U^+
    // applies U along each ket axis and conj(U) along each bra axis.
    auto stride_ket = [&](int mode) { return pow_int(d, rho.arity() - 1 - mode); };
    auto stride_bra = [&](int mode) { return stride_ket(mode) * side; };
    cplx* data = rho.rho().data();
    switch (g.kind) {
        case GateKind::BeamSplitter: {
            const BsBlocks& bs = bs_blocks(g.params[0], d);
            apply_bs(data, total, d, stride_ket(g.modes[0]), stride_ket(g.modes[1]), bs,
                     false);
            apply_bs(data, total, d, stride_bra(g.modes[0]), stride_bra(g.modes[1]), bs,
                     true);
            return;
        }
        case GateKind::LossMarker:
            loss_channel(rho, g.params[0], g.modes[0]);
            return;
        case GateKind::HomodyneMarker:
            throw std::logic_error("marker gates are handled by run_circuit");
        default: {
            Mat u = single_mode_matrix(g, d);
            apply_axis(data, total, d, stride_ket(g.modes[0]), u);
            apply_axis_conj(data, total, d, stride_bra(g.modes[0]), u);
            return;
        }
    }
}

void loss_channel(FockDensity& rho, double eta, int mode) {
    if (eta == 0.0) return;
    if (eta < 0.0 || eta >= 1.0) throw std::invalid_argument("loss_channel: eta in [0,1)");
    const int d = rho.dim();
    const double tau = std::sqrt(1.0 - eta * eta);  // amplitude transmission
    const size_t side = size_t(rho.rho().rows());
    const size_t total = side * side;
    const size_t s_ket = pow_int(d, rho.arity() - 1 - mode);
    const size_t s_bra = s_ket * side;

    Mat acc = Mat::Zero(side, side);
    Mat work(side, side);
    for (int k = 0; k < d; ++k) {
        Mat a_k = Mat::Zero(d, d);
        for (int n = k; n < d; ++n) {
            const double logc = 0.5 * (log_factorial(n) - log_factorial(k) -
                                       log_factorial(n - k));
            a_k(n - k, n) = std::exp(logc + (n - k) * std::log(tau) +
                                     k * std::log(eta));
        }
        work = rho.rho();
        apply_axis(work.data(), total, d, s_ket, a_k);
        apply_axis_conj(work.data(), total, d, s_bra, a_k);
        acc += work;
    }
    rho.rho() = std::move(acc);
}

namespace {

// Probability mass with any mode index in the top two Fock levels.  The
// truncated gate matrices are exactly unitary, so truncation damage shows up
// as population parked against the cutoff rather than as norm loss.
double boundary_mass(const cplx* data, size_t total, int d, int arity) {
    double m = 0.0;
    for (size_t idx = 0; idx < total; ++idx) {
        size_t rest = idx;
        bool top = false;
        for (int mode = 0; mode < arity; ++mode) {
            if (int(rest % size_t(d)) >= d - 2) top = true;
            rest /= size_t(d);
        }
        if (top) m += std::norm(data[idx]);
    }
    return m;
}

double boundary_mass(const FockState& psi) {
    return boundary_mass(psi.amp().data(), size_t(psi.amp().size()), psi.dim(),
                         psi.arity());
}

double boundary_mass(const FockDensity& rho) {
    const int d = rho.dim();
    const size_t side = size_t(rho.rho().rows());
    double m = 0.0;
    for (size_t idx = 0; idx < side; ++idx) {
        size_t rest = idx;
        bool top = false;
        for (int mode = 0; mode < rho.arity(); ++mode) {
            if (int(rest % size_t(d)) >= d - 2) top = true;
            rest /= size_t(d);
        }
        if (top) m += rho.rho()(Eigen::Index(idx), Eigen::Index(idx)).real();
    }
    return m;
}

}  // namespace

RunResult run_circuit(const CircuitIR& c, const FockState& input) {
    RunResult out;
    out.pure = input;
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::HomodyneMarker) continue;  // deferred
        if (g.kind == GateKind::LossMarker && out.pure) {
            out.density = FockDensity(*out.pure);
            out.pure.reset();
        }
        double norm, leak;
        if (out.pure) {
            apply_gate(*out.pure, g);
            norm = out.pure->norm_sq();
            leak = boundary_mass(*out.pure);
        } else {
            apply_gate(*out.density, g);
            norm = out.density->trace();
            leak = boundary_mass(*out.density);
        }
        if (g.kind != GateKind::LossMarker && norm > 0.0) {
            if (leak > 1e-2 * norm)
                throw std::runtime_error("run_circuit: truncation leakage above 1e-2");
            if (leak > 1e-4 * norm) out.warnings.push_back("truncation leakage in gate");
        }
    }
    return out;
}

namespace {

// Quadrature-eigenfunction coefficients <q=value|n> for n = 0..d-1.
Vec quad_coeffs(int d, Quadrature q, double value) {
    std::vector<double> h = hermite_functions(value, d - 1);
    Vec v(d);
    for (int n = 0; n < d; ++n) {
        cplx phase = 1.0;
        if (q == Quadrature::P) phase = std::pow(cplx(0.0, -1.0), n);
        v[n] = h[n] * phase;
    }
    return v;
}

// Contract one mode of a pure state with <q|, producing the unnormalized
// conditional amplitude on the remaining modes.
Vec contract_mode(const FockState& psi, int mode, const Vec& bra) {
    const int d = psi.dim();
    const size_t stride = pow_int(d, psi.arity() - 1 - mode);
    const size_t total = size_t(psi.amp().size());
    const size_t outer = total / (stride * d);
    Vec out = Vec::Zero(Eigen::Index(total / d));
    for (size_t o = 0; o < outer; ++o) {
        for (size_t i = 0; i < stride; ++i) {
            cplx acc = 0.0;
            const cplx* p = psi.amp().data() + o * d * stride + i;
            for (int n = 0; n < d; ++n) acc += bra[n] * p[n * stride];
            out[Eigen::Index(o * stride + i)] = acc;
        }
    }
    return out;
}

}  // namespace

HomodyneResult homodyne_condition(const FockState& psi, int mode, Quadrature q,
                                  double value, double window) {
    HomodyneResult res;
    if (window == 0.0) {
        Vec amp = contract_mode(psi, mode, quad_coeffs(psi.dim(), q, value));
        const double dens = amp.squaredNorm();
        if (dens <= 0.0) throw std::runtime_error("homodyne_condition: zero density");
        FockState cond(psi.arity() - 1, psi.n_max());
        cond.amp() = amp / std::sqrt(dens);
        res.pure = std::move(cond);
        res.probability = dens;
        return res;
    }
    // Window conditioning gives a mixture over the unread outcome.
    std::vector<double> nodes, weights;
    gauss_legendre(64, nodes, weights);
    FockDensity rho(psi.arity() - 1, psi.n_max());
    double prob = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        const double p0 = value + window * nodes[i];
        const double w = weights[i] * window;
        Vec amp = contract_mode(psi, mode, quad_coeffs(psi.dim(), q, p0));
        rho.rho() += w * (amp * amp.adjoint());
        prob += w * amp.squaredNorm();
    }
    if (prob <= 0.0) throw std::runtime_error("homodyne_condition: zero probability window");
    rho.rho() /= prob;
    res.density = std::move(rho);
    res.probability = prob;
    return res;
}

HomodyneResult homodyne_condition(const FockDensity& rho, int mode, Quadrature q,
                                  double value, double window) {
    const int d = rho.dim();
    const size_t side = size_t(rho.rho().rows());
    const size_t sub = side / d;
    const size_t stride = pow_int(d, rho.arity() - 1 - mode);

    auto conditioned_at = [&](double q0, Mat& out) {
        Vec bra = quad_coeffs(d, q, q0);
        // out(rs, cs) = sum_{n,m} bra_n rho(row(n,rs), col(m,cs)) conj(bra_m)
        out.setZero();
        for (size_t ro = 0; ro < sub; ++ro) {
            const size_t rbase = (ro / stride) * stride * d + (ro % stride);
            for (size_t co = 0; co < sub; ++co) {
                const size_t cbase = (co / stride) * stride * d + (co % stride);
                cplx acc = 0.0;
                for (int n = 0; n < d; ++n)
                    for (int m = 0; m < d; ++m)
                        acc += bra[n] * std::conj(bra[m]) *
                               rho.rho()(Eigen::Index(rbase + n * stride),
                                         Eigen::Index(cbase + m * stride));
                out(Eigen::Index(ro), Eigen::Index(co)) = acc;
            }
        }
    };

    HomodyneResult res;
    FockDensity cond(rho.arity() - 1, rho.n_max());
    Mat work(sub, sub);
    if (window == 0.0) {
        conditioned_at(value, work);
        const double dens = work.trace().real();
        if (dens <= 0.0) throw std::runtime_error("homodyne_condition: zero density");
        cond.rho() = work / dens;
        res.probability = dens;
    } else {
        std::vector<double> nodes, weights;
        gauss_legendre(64, nodes, weights);
        double prob = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i) {
            conditioned_at(value + window * nodes[i], work);
            cond.rho() += weights[i] * window * work;
            prob += weights[i] * window * work.trace().real();
        }
        if (prob <= 0.0)
            throw std::runtime_error("homodyne_condition: zero probability window");
        cond.rho() /= prob;
        res.probability = prob;
    }
    res.density = std::move(cond);
    return res;
}

double fidelity(const FockState& a, const FockState& b) {
    return std::norm(a.amp().dot(b.amp()));
}

double fidelity(const FockDensity& rho, const FockState& target) {
    return (target.amp().adjoint() * rho.rho() * target.amp())(0, 0).real();
}

FockDensity partial_trace_keep(const FockDensity& rho, int keep_mode) {
    const int d = rho.dim();
    const int arity = rho.arity();
    FockDensity out(1, rho.n_max());
    const size_t stride = pow_int(d, arity - 1 - keep_mode);
    const size_t side = size_t(rho.rho().rows());
    const size_t sub = side / d;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            cplx acc = 0.0;
            for (size_t o = 0; o < sub; ++o) {
                const size_t base = (o / stride) * stride * d + (o % stride);
                acc += rho.rho()(Eigen::Index(base + r * stride),
                                 Eigen::Index(base + c * stride));
            }
            out.rho()(r, c) = acc;
        }
    return out;
}

FockDensity partial_trace_keep(const FockState& psi, int keep_mode) {
    return partial_trace_keep(FockDensity(psi), keep_mode);
}

WignerGrid wigner(const FockDensity& rho, double x_range, double p_range, int points) {
    if (rho.arity() != 1) throw std::invalid_argument("wigner: single-mode input");
    WignerGrid gr;
    gr.x_points = gr.p_points = points;
    gr.x_min = -x_range;
    gr.x_max = x_range;
    gr.p_min = -p_range;
    gr.p_max = p_range;
    gr.w.assign(size_t(points) * points, 0.0);

    const int d = rho.dim();
    const double y_ext = x_range + 8.0;
    const int ny = 768;
    const double dy = 2.0 * y_ext / ny;

    // W(x,p) = (1/pi) * int rho(x+y, x-y) e^{2ipy} dy with
    // rho(x, x') = sum_{mn} phi_m(x) rho_mn phi_n(x').
    std::vector<cplx> row(ny);
    for (int i = 0; i < points; ++i) {
        const double x = gr.x(i);
        for (int jy = 0; jy < ny; ++jy) {
            const double y = -y_ext + (jy + 0.5) * dy;
            std::vector<double> hp = hermite_functions(x + y, d - 1);
            std::vector<double> hm = hermite_functions(x - y, d - 1);
            cplx acc = 0.0;
            for (int m = 0; m < d; ++m) {
                if (hp[m] == 0.0) continue;
                cplx inner = 0.0;
                for (int n = 0; n < d; ++n) inner += rho.rho()(m, n) * hm[n];
                acc += hp[m] * inner;
            }
            row[jy] = acc;
        }
        for (int j = 0; j < points; ++j) {
            const double p = gr.p(j);
            cplx acc = 0.0;
            for (int jy = 0; jy < ny; ++jy) {
                const double y = -y_ext + (jy + 0.5) * dy;
                acc += row[jy] * std::polar(1.0, 2.0 * p * y);
            }
            gr.w[size_t(i) * points + j] = (acc * dy / M_PI).real();
        }
    }
    return gr;
}

GridWavefunction to_position_wavefunction(const FockState& psi, const Grid1D& grid) {
    if (psi.arity() != 1)
        throw std::invalid_argument("to_position_wavefunction: single-mode input");
    GridWavefunction out;
    out.grid = grid;
    out.amp.resize(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        std::vector<double> h = hermite_functions(grid.x(j), psi.n_max());
        cplx acc = 0.0;
        for (int n = 0; n <= psi.n_max(); ++n) acc += psi.amp()[n] * h[n];
        out.amp[j] = acc;
    }
    return out;
}

}  // namespace cvforge
