#include "cvforge/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cvforge {

namespace {

struct QndParts {
    std::vector<Gate> core;
    double corrective = 0.0;  // strength of the implied X^3 on the control mode
};

QndParts qnd_parts(double alpha, int i, int j, double s) {
    QndParts out;
    if (alpha == 0.0) return out;
    const double cs = std::cos(s), sn = std::sin(s);
    if (std::abs(sn * cs) < 1e-12)
        throw std::invalid_argument("cubic QND: sin(s)cos(s) = 0 makes alpha unreachable");
    const double r = alpha / (6.0 * cs * sn * sn);
    out.core = {Gate::beam_splitter(s, i, j), Gate::cubic(r, i),
                Gate::beam_splitter(-2.0 * s, i, j), Gate::cubic(r, i),
                Gate::beam_splitter(s, i, j)};
    out.corrective = -2.0 * r * cs * cs * cs;
    return out;
}

void append(std::vector<Gate>& gates, const std::vector<Gate>& more) {
    gates.insert(gates.end(), more.begin(), more.end());
}

// Fold runs of consecutive rotations: rotations on distinct modes commute, so
// a run collapses to one net angle per mode, dropping zero results.
void merge_rotations(std::vector<Gate>& gates) {
    std::vector<Gate> out;
    std::map<int, double> pending;
    auto flush = [&] {
        for (const auto& [mode, angle] : pending)
            if (std::abs(angle) > 1e-15) out.push_back(Gate::rotate(angle, mode));
        pending.clear();
    };
    for (const Gate& g : gates) {
        if (g.kind == GateKind::Rotate) {
            pending[g.modes[0]] += g.params[0];
        } else {
            flush();
            out.push_back(g);
        }
    }
    flush();
    gates = std::move(out);
}

}  // namespace

double min_strength_angle() { return std::acos(1.0 / std::sqrt(3.0)); }

CircuitIR decompose_cubic_qnd(double alpha, int mode_i, int mode_j) {
    return decompose_cubic_qnd(alpha, mode_i, mode_j, min_strength_angle());
}

CircuitIR decompose_cubic_qnd(double alpha, int mode_i, int mode_j, double s) {
    CircuitIR c;
    c.arity = std::max(mode_i, mode_j) + 1;
    if (alpha == 0.0) return c;
    QndParts parts = qnd_parts(alpha, mode_i, mode_j, s);
    c.gates = std::move(parts.core);
    c.gates.push_back(Gate::cubic(parts.corrective, mode_i));
    return c;
}

CircuitIR decompose_cv_toffoli(double beta, int mode_i, int mode_j, int mode_k) {
    CircuitIR c;
    c.arity = std::max({mode_i, mode_j, mode_k}) + 1;
    if (beta == 0.0) return c;
    const double u = M_PI / 4.0;
    const double t = beta / (2.0 * std::sin(2.0 * u));
    const double s0 = min_strength_angle();
    QndParts plus = qnd_parts(t, mode_i, mode_j, s0);
    QndParts minus = qnd_parts(-t, mode_i, mode_j, s0);
    // Operator B(u) QND(t) B(-2u) QND(-t) B(u): rightmost factor acts first.
    // The t and -t correctives are equal and opposite x_i^3 phases that commute
    // through every block between them, so they cancel and are not emitted.
    c.gates.push_back(Gate::beam_splitter(u, mode_j, mode_k));
    append(c.gates, minus.core);
    c.gates.push_back(Gate::beam_splitter(-2.0 * u, mode_j, mode_k));
    append(c.gates, plus.core);
    c.gates.push_back(Gate::beam_splitter(u, mode_j, mode_k));
    return c;
}

CircuitIR compile_S(const ParamVector& params, double t, int control, int target,
                    CompileStrategy strategy) {
    if (params.entries.size() % 2 != 0)
        throw std::invalid_argument("compile_S: entries must have even length");
    CircuitIR c;
    c.arity = std::max(control, target) + 1;

    const int m = int(params.entries.size()) / 2;
    const double r = double(params.repetitions);

    // QND strengths in application order: mu_j then lambda_j, pair 1 first.
    struct Block {
        double alpha;
        bool momentum;  // realized in the Fourier-rotated frame
    };
    std::vector<Block> blocks;
    for (int rep = 0; rep < params.repetitions; ++rep) {
        for (int j = 0; j < m; ++j) {
            const double lam = params.entries[2 * (m - 1 - j)] / r;
            const double mu = params.entries[2 * (m - 1 - j) + 1] / r;
            if (mu != 0.0) blocks.push_back({t * mu / 2.0, true});
            if (lam != 0.0) blocks.push_back({t * lam / 2.0, false});
        }
    }

    std::vector<double> angles(blocks.size(), min_strength_angle());
    if (strategy == CompileStrategy::EqualStrength && !blocks.empty()) {
        std::vector<double> mags;
        for (const Block& b : blocks) mags.push_back(std::abs(b.alpha));
        auto plan = equal_strength_plan(mags);
        if (!plan) throw std::runtime_error("compile_S: equal-strength plan infeasible");
        angles = plan->s;
    }

    double corrective = 0.0;
    for (size_t b = 0; b < blocks.size(); ++b) {
        QndParts parts = qnd_parts(blocks[b].alpha, control, target, angles[b]);
        corrective += parts.corrective;
        if (blocks[b].momentum) c.gates.push_back(Gate::rotate(M_PI / 2.0, target));
        append(c.gates, parts.core);
        if (blocks[b].momentum) c.gates.push_back(Gate::rotate(-M_PI / 2.0, target));
    }
    merge_rotations(c.gates);
    if (corrective != 0.0) c.gates.push_back(Gate::cubic(corrective, control));
    return c;
}

CircuitIR compile_T(const ParamVector& params, double t, int mode_i, int mode_j,
                    int mode_k) {
    if (params.entries.size() % 2 != 0)
        throw std::invalid_argument("compile_T: entries must have even length");
    CircuitIR c;
    c.arity = std::max({mode_i, mode_j, mode_k}) + 1;

    const int m = int(params.entries.size()) / 2;
    const double r = double(params.repetitions);
    for (int rep = 0; rep < params.repetitions; ++rep) {
        for (int j = 0; j < m; ++j) {
            const double lam = params.entries[2 * (m - 1 - j)] / r;
            const double mu = params.entries[2 * (m - 1 - j) + 1] / r;
            if (mu != 0.0) {
                c.gates.push_back(Gate::rotate(M_PI / 2.0, mode_j));
                c.gates.push_back(Gate::rotate(M_PI / 2.0, mode_k));
                append(c.gates, decompose_cv_toffoli(t * mu, mode_i, mode_j, mode_k).gates);
                c.gates.push_back(Gate::rotate(-M_PI / 2.0, mode_j));
                c.gates.push_back(Gate::rotate(-M_PI / 2.0, mode_k));
            }
            if (lam != 0.0)
                append(c.gates, decompose_cv_toffoli(t * lam, mode_i, mode_j, mode_k).gates);
        }
    }
    merge_rotations(c.gates);
    return c;
}

std::optional<EqualStrengthPlan> equal_strength_plan(const std::vector<double>& alphas) {
    const int n = int(alphas.size());
    if (n == 0) return EqualStrengthPlan{};
    for (double a : alphas)
        if (a == 0.0) return std::nullopt;

    const double s0 = min_strength_angle();
    if (n == 1) {
        // No corrective constraint with one gate; use the weakest-gate angle.
        EqualStrengthPlan plan;
        plan.s = {s0};
        plan.r = std::abs(alphas[0]) / (6.0 * std::cos(s0) * std::pow(std::sin(s0), 2));
        return plan;
    }

    // For a common strength r, each angle satisfies 6r cos(s_j)sin^2(s_j) =
    // |alpha_j|, i.e. with c = cos(s_j) the cubic c - c^3 = |alpha_j|/(6r).
    // It has two roots in (0,1) whenever |alpha_j|/(6r) < 2/(3 sqrt(3)), one
    // on each side of cos(s0); the min-strength point is the double root, so
    // a Newton iteration started there has a singular Jacobian. Instead,
    // enumerate the 2^n branch patterns and bisect the remaining constraint
    // sum_j 2 cos^3(s_j) = 1 in r, keeping the smallest feasible strength.
    const double vmax = 2.0 / (3.0 * std::sqrt(3.0));
    double r_lo = 0.0;
    for (double a : alphas) r_lo = std::max(r_lo, std::abs(a) / (6.0 * vmax));

    // c - c^3 = v: branch 0 in (0, cos(s0)], branch 1 in [cos(s0), 1).
    auto cos_root = [](double v, int branch) {
        const double theta = std::acos(std::clamp(-3.0 * std::sqrt(3.0) * v / 2.0, -1.0, 1.0));
        const double shift = branch == 1 ? 0.0 : 2.0 * M_PI / 3.0;
        return 2.0 / std::sqrt(3.0) * std::cos(theta / 3.0 - shift);
    };
    auto corrective_gap = [&](double r, unsigned pattern) {
        double csum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double c = cos_root(std::abs(alphas[size_t(j)]) / (6.0 * r), (pattern >> j) & 1u);
            csum += 2.0 * c * c * c;
        }
        return csum - 1.0;
    };

    double best_r = std::numeric_limits<double>::infinity();
    unsigned best_pattern = 0;
    for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
        double lo = r_lo * (1.0 + 1e-14), hi = r_lo * 1e6;
        const double glo = corrective_gap(lo, pattern);
        if (glo * corrective_gap(hi, pattern) > 0.0) continue;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            ((corrective_gap(mid, pattern) < 0.0) == (glo < 0.0) ? lo : hi) = mid;
        }
        const double r = 0.5 * (lo + hi);
        if (r < best_r) {
            best_r = r;
            best_pattern = pattern;
        }
    }
    if (!std::isfinite(best_r)) return std::nullopt;

    EqualStrengthPlan plan;
    plan.r = best_r;
    for (int j = 0; j < n; ++j) {
        const double c =
            cos_root(std::abs(alphas[size_t(j)]) / (6.0 * best_r), (best_pattern >> j) & 1u);
        if (c <= 0.0 || c >= 1.0) return std::nullopt;
        plan.s.push_back(std::acos(c));
    }
    return plan;
}

}  // namespace cvforge
