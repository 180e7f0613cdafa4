#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvforge/focksim.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace cvforge;

namespace {

Mat x_matrix(int d) {
    Mat x = Mat::Zero(d, d);
    for (int n = 1; n < d; ++n) {
        x(n - 1, n) = std::sqrt(n / 2.0);
        x(n, n - 1) = std::sqrt(n / 2.0);
    }
    return x;
}

Mat p_matrix(int d) {
    Mat p = Mat::Zero(d, d);
    const cplx i(0.0, 1.0);
    for (int n = 1; n < d; ++n) {
        p(n - 1, n) = std::sqrt(n / 2.0) / i;
        p(n, n - 1) = -std::sqrt(n / 2.0) / i;
    }
    return p;
}

cplx expectation(const FockState& s, const Mat& op) {
    return s.amp().dot(op * s.amp());
}

FockState random_state(int arity, int n_max, int fill, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    FockState s(arity, n_max);
    const int d = n_max + 1;
    for (Eigen::Index i = 0; i < s.amp().size(); ++i) {
        // occupy only indices whose every mode digit stays below `fill`
        size_t rest = size_t(i);
        bool low = true;
        for (int m = 0; m < arity; ++m) {
            if (int(rest % size_t(d)) >= fill) low = false;
            rest /= size_t(d);
        }
        if (low) s.amp()[i] = cplx(g(rng), g(rng));
    }
    s.amp() /= std::sqrt(s.norm_sq());
    return s;
}

FockState product2(const FockState& a, const FockState& b) {
    REQUIRE(a.n_max() == b.n_max());
    FockState s(2, a.n_max());
    const int d = a.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            s.amp()[Eigen::Index(size_t(i) * d + j)] = a.amp()[i] * b.amp()[j];
    return s;
}

}  // namespace

TEST_CASE("rotation by a full turn is the identity") {
    FockState s = random_state(1, 20, 6, 5);
    const FockState in = s;
    apply_gate(s, Gate::rotate(2.0 * M_PI, 0));
    CHECK(fidelity(s, in) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("non-marker gates are unitary with truncation headroom") {
    const std::vector<Gate> gates = {Gate::rotate(0.7, 0), Gate::squeeze(0.3, 0),
                                     Gate::displace(cplx(0.4, 0.2), 0),
                                     Gate::cubic(0.08, 0)};
    for (const Gate& g : gates) {
        FockState s = random_state(1, 30, 3, 17);
        apply_gate(s, g);
        CHECK(std::abs(s.norm_sq() - 1.0) < 1e-8);
    }
    FockState two = random_state(2, 20, 3, 18);
    apply_gate(two, Gate::beam_splitter(0.6, 0, 1));
    CHECK(std::abs(two.norm_sq() - 1.0) < 1e-12);
}

TEST_CASE("cubic phase gate shifts momentum by 3r<x^2>") {
    const int n_max = 40;
    const double r = 0.1;
    FockState s = FockState::vacuum(1, n_max);
    apply_gate(s, Gate::cubic(r, 0));
    const double p_mean = expectation(s, p_matrix(n_max + 1)).real();
    CHECK(p_mean == doctest::Approx(1.5 * r).epsilon(1e-4));
}

TEST_CASE("single-photon beam splitter") {
    const int n_max = 6;
    FockState s = FockState::fock(2, n_max, {1, 0});
    apply_gate(s, Gate::beam_splitter(M_PI / 4.0, 0, 1));
    FockState target(2, n_max);
    target.at({1, 0}) = 1.0 / std::sqrt(2.0);
    target.at({0, 1}) = 1.0 / std::sqrt(2.0);
    CHECK(fidelity(s, target) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("displacement produces the coherent state") {
    const int n_max = 30;
    const cplx alpha(0.8, -0.5);
    FockState s = FockState::vacuum(1, n_max);
    apply_gate(s, Gate::displace(alpha, 0));
    CHECK(fidelity(s, FockState::coherent(alpha, n_max)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("run_circuit basics") {
    const FockState in = random_state(2, 15, 4, 23);
    CircuitIR empty;
    empty.arity = 2;
    RunResult r = run_circuit(empty, in);
    REQUIRE(r.is_pure());
    CHECK(fidelity(*r.pure, in) == doctest::Approx(1.0));
    CHECK(r.warnings.empty());

    // a displacement far beyond the truncation must be rejected, not silently clipped
    CircuitIR big;
    big.arity = 1;
    big.gates = {Gate::displace(cplx(4.0, 0.0), 0)};
    const FockState vac = FockState::vacuum(1, 5);
    CHECK_THROWS_AS(run_circuit(big, vac), std::runtime_error);
}

TEST_CASE("loss channel on coherent states") {
    const int n_max = 25;
    const double eta = 0.3;
    const cplx beta(1.2, 0.4);
    FockDensity rho{FockState::coherent(beta, n_max)};
    loss_channel(rho, eta, 0);
    const FockState target = FockState::coherent(beta * std::sqrt(1.0 - eta * eta), n_max);
    CHECK(fidelity(rho, target) >= 1.0 - 1e-8);
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-10));

    // eta = 0 leaves the state untouched
    FockDensity same{FockState::coherent(beta, n_max)};
    loss_channel(same, 0.0, 0);
    CHECK((same.rho() - FockDensity{FockState::coherent(beta, n_max)}.rho()).norm() == 0.0);
}

TEST_CASE("loss channels compose like cascaded beam splitters") {
    const int n_max = 15;
    const double e1 = 0.25, e2 = 0.4;
    const double combined = std::sqrt(e1 * e1 + e2 * e2 - e1 * e1 * e2 * e2);

    const FockState a = random_state(1, n_max, 6, 41);
    const FockState b = random_state(1, n_max, 6, 42);
    FockDensity rho(1, n_max);
    rho.rho() = 0.6 * (a.amp() * a.amp().adjoint()) + 0.4 * (b.amp() * b.amp().adjoint());

    FockDensity seq = rho;
    loss_channel(seq, e1, 0);
    loss_channel(seq, e2, 0);
    FockDensity direct = rho;
    loss_channel(direct, combined, 0);
    CHECK((seq.rho() - direct.rho()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Kraus sum preserves trace on the full truncated space") {
    const int n_max = 12;
    const FockState a = random_state(1, n_max, n_max + 1, 43);
    FockDensity rho{a};
    loss_channel(rho, 0.35, 0);
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("homodyne conditioning on product states") {
    const int n_max = 12;
    const double x0 = 0.7;
    const FockState vac2 = FockState::vacuum(2, n_max);

    HomodyneResult at_point = homodyne_condition(vac2, 0, Quadrature::X, x0, 0.0);
    CHECK(at_point.probability ==
          doctest::Approx(std::exp(-x0 * x0) / std::sqrt(M_PI)).epsilon(1e-10));
    REQUIRE(at_point.pure.has_value());
    CHECK(fidelity(*at_point.pure, FockState::vacuum(1, n_max)) == doctest::Approx(1.0));

    // momentum quadrature of the vacuum has the same statistics
    HomodyneResult in_p = homodyne_condition(vac2, 0, Quadrature::P, x0, 0.0);
    CHECK(in_p.probability ==
          doctest::Approx(std::exp(-x0 * x0) / std::sqrt(M_PI)).epsilon(1e-10));

    // a wide window accepts everything
    HomodyneResult wide = homodyne_condition(vac2, 0, Quadrature::X, 0.0, 8.0);
    CHECK(wide.probability == doctest::Approx(1.0).epsilon(1e-8));
    REQUIRE(wide.density.has_value());
    CHECK(fidelity(*wide.density, FockState::vacuum(1, n_max)) == doctest::Approx(1.0).epsilon(1e-8));

    // conditioning the unmeasured mode is unaffected by the outcome
    const FockState vac_one = FockState::fock(2, n_max, {0, 1});
    HomodyneResult other = homodyne_condition(vac_one, 0, Quadrature::X, 0.3, 0.0);
    FockState one(1, n_max);
    one.at({1}) = 1.0;
    CHECK(fidelity(*other.pure, one) == doctest::Approx(1.0));

    // measuring |1> at its node has zero probability density
    const FockState one_vac = FockState::fock(2, n_max, {1, 0});
    CHECK_THROWS_AS(homodyne_condition(one_vac, 0, Quadrature::X, 0.0, 0.0),
                    std::runtime_error);
}

TEST_CASE("pure and density homodyne routes agree") {
    const int n_max = 10;
    FockState s = random_state(2, n_max, 4, 77);
    apply_gate(s, Gate::beam_splitter(0.5, 0, 1));
    const FockDensity rho{s};

    HomodyneResult from_pure = homodyne_condition(s, 0, Quadrature::X, 0.4, 0.0);
    HomodyneResult from_density = homodyne_condition(rho, 0, Quadrature::X, 0.4, 0.0);
    CHECK(from_pure.probability == doctest::Approx(from_density.probability).epsilon(1e-12));
    REQUIRE(from_density.density.has_value());
    CHECK(fidelity(*from_density.density, *from_pure.pure) == doctest::Approx(1.0).epsilon(1e-10));

    HomodyneResult wp = homodyne_condition(s, 0, Quadrature::P, 0.2, 0.3);
    HomodyneResult wd = homodyne_condition(rho, 0, Quadrature::P, 0.2, 0.3);
    CHECK(wp.probability == doctest::Approx(wd.probability).epsilon(1e-12));
    CHECK((wp.density->rho() - wd.density->rho()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fidelity basics") {
    const int n_max = 8;
    const FockState chi = random_state(1, n_max, 5, 91);
    CHECK(fidelity(chi, chi) == doctest::Approx(1.0).epsilon(1e-12));

    FockState one(1, n_max);
    one.at({1}) = 1.0;
    CHECK(fidelity(FockState::vacuum(1, n_max), one) == 0.0);

    FockDensity mixed(1, n_max);
    mixed.rho()(0, 0) = 0.5;
    mixed.rho()(1, 1) = 0.5;
    CHECK(fidelity(mixed, FockState::vacuum(1, n_max)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial trace") {
    const int n_max = 8;
    const FockState a = random_state(1, n_max, 4, 11);
    const FockState b = random_state(1, n_max, 4, 12);
    const FockDensity keep0 = partial_trace_keep(product2(a, b), 0);
    CHECK((keep0.rho() - FockDensity{a}.rho()).cwiseAbs().maxCoeff() < 1e-12);
    const FockDensity keep1 = partial_trace_keep(product2(a, b), 1);
    CHECK((keep1.rho() - FockDensity{b}.rho()).cwiseAbs().maxCoeff() < 1e-12);

    // balanced single-photon splitting leaves each arm maximally mixed on {0,1}
    FockState s = FockState::fock(2, n_max, {1, 0});
    apply_gate(s, Gate::beam_splitter(M_PI / 4.0, 0, 1));
    const FockDensity arm = partial_trace_keep(s, 0);
    CHECK(arm.rho()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(arm.rho()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(arm.rho()(0, 1)) < 1e-12);
}

TEST_CASE("Wigner function values and normalization") {
    const int n_max = 20;
    const int points = 81;
    const double range = 6.0;

    const WignerGrid wv = wigner(FockDensity{FockState::vacuum(1, n_max)}, range, range, points);
    CHECK(wv.w[size_t(points / 2) * points + points / 2] ==
          doctest::Approx(1.0 / M_PI).epsilon(1e-6));

    FockState one(1, n_max);
    one.at({1}) = 1.0;
    const WignerGrid w1 = wigner(FockDensity{one}, range, range, points);
    CHECK(w1.w[size_t(points / 2) * points + points / 2] ==
          doctest::Approx(-1.0 / M_PI).epsilon(1e-6));

    const double dx = (wv.x_max - wv.x_min) / (points - 1);
    for (const WignerGrid* g : {&wv, &w1}) {
        double mass = 0.0;
        for (double v : g->w) mass += v * dx * dx;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("position wavefunction synthesis") {
    const int n_max = 40;
    Grid1D grid{256, 6.0};

    const GridWavefunction vac = to_position_wavefunction(FockState::vacuum(1, n_max), grid);
    FockState one(1, n_max);
    one.at({1}) = 1.0;
    const GridWavefunction fst = to_position_wavefunction(one, grid);

    const double k = 1.4;
    FockState sq = FockState::vacuum(1, n_max);
    apply_gate(sq, Gate::squeeze(std::log(k), 0));
    const GridWavefunction sqw = to_position_wavefunction(sq, grid);

    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        const double g0 = std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0);
        CHECK(std::abs(vac.amp[size_t(j)] - g0) < 1e-10);
        CHECK(std::abs(fst.amp[size_t(j)] - std::sqrt(2.0) * x * g0) < 1e-10);
        const double gs = std::sqrt(k) * std::pow(M_PI, -0.25) * std::exp(-k * k * x * x / 2.0);
        CHECK(std::abs(sqw.amp[size_t(j)] - gs) < 1e-6);
    }
}
