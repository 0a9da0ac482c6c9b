#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "bolab/norms.hpp"
#include "bolab/rng.hpp"
#include "bolab/solver.hpp"
#include "bolab/symbols.hpp"
#include "bolab/trajectory.hpp"
#include "bolab/transform.hpp"
#include "test_common.hpp"

using namespace bolab;
using namespace testutil;

namespace {

// Manufactured solution u*(t,x) = e^{-t} cos(x - t) for u_t + H u_xx = (u^2)_x + f.
// Derived by substituting u* into the equation; the quadratic term only
// excites |n| = 2, the linear part only |n| = 1.
SpectralField mms_exact(const Grid& g, double t) {
    SpectralField u(g);
    const cplx c1 = 0.5 * std::exp(-t) * std::polar(1.0, -t);
    u.set_mode(1, c1);
    u.set_mode(-1, std::conj(c1));
    return u;
}

Forcing mms_forcing(const Grid& g) {
    return [g](double t) {
        SpectralField f(g);
        const cplx f1 = -0.5 * std::exp(-t) * std::polar(1.0, -t);
        const cplx f2 = cplx{0.0, -0.5} * std::exp(-2.0 * t) * std::polar(1.0, -2.0 * t);
        f.set_mode(1, f1);
        f.set_mode(-1, std::conj(f1));
        f.set_mode(2, f2);
        f.set_mode(-2, std::conj(f2));
        return f;
    };
}

double mms_error(const Grid& g, double dt, Scheme scheme) {
    EvolveParams p;
    p.t_final = 1.0;
    p.dt = dt;
    p.scheme = scheme;
    p.store_every = 1 << 20; // only endpoints matter
    auto traj = evolve_with_forcing(mms_exact(g, 0.0), p, mms_forcing(g));
    return sobolev_norm(traj.states.back() - mms_exact(g, 1.0), 0.0);
}

} // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("nonlinearity of cos x is exactly -sin 2x") {
    Grid g(32);
    auto nl = nonlinearity(make_cos(g, 1));
    CHECK(max_coeff_diff(nl, make_sin(g, 2, -1.0)) <= 1e-14);
    CHECK(std::abs(nl.mean_coeff()) == 0.0);
    CHECK(nl.is_real(1e-14));
}

TEST_CASE("padded product equals the exact convolution sum") {
    Grid g(32);
    auto u = random_real_field(g, 41u, [](int n) { return 1.0 / (1.0 + n); });
    auto v = random_real_field(g, 43u, [](int n) { return std::exp(-0.2 * n); });
    auto fast = multiply(u, v);
    SpectralField slow(g);
    const int K = g.max_mode();
    for (int n = -K; n <= K; ++n) {
        cplx acc{0.0, 0.0};
        for (int m = -K; m <= K; ++m) acc += u.mode(m) * v.mode(n - m);
        slow.set_mode(n, acc);
    }
    CHECK(rel_l2_diff(fast, slow) <= 1e-14);
}

TEST_CASE("two-thirds dealiasing masks the upper band") {
    Grid g(32); // cut at |n| <= 10
    auto u = make_cos(g, 6);
    auto none = nonlinearity(u, Dealias::None);
    auto masked = nonlinearity(u, Dealias::TwoThirds);
    CHECK(max_coeff_diff(none, make_sin(g, 12, -6.0)) <= 1e-13); // product lands at |n| = 12
    CHECK(coeff_norm(masked) <= 1e-14);                          // 12 > N/3: only FFT noise remains
    // Input-side mask too: a mode just above the cut contributes nothing.
    auto hi = make_cos(g, 11);
    CHECK(coeff_norm(nonlinearity(hi, Dealias::TwoThirds)) == 0.0);
}

TEST_CASE("manufactured solution converges at fourth order") {
    Grid g(64);
    const double e1 = mms_error(g, 1e-2, Scheme::IFRK4);
    const double e2 = mms_error(g, 5e-3, Scheme::IFRK4);
    const double e3 = mms_error(g, 2.5e-3, Scheme::IFRK4);
    const double p12 = std::log2(e1 / e2);
    const double p23 = std::log2(e2 / e3);
    CHECK(p12 >= 3.8);
    CHECK(p12 <= 4.2);
    CHECK(p23 >= 3.8);
    CHECK(p23 <= 4.2);
}

TEST_CASE("explicit midpoint variant converges at second order") {
    Grid g(64);
    const double e1 = mms_error(g, 1e-2, Scheme::IFMidpoint);
    const double e2 = mms_error(g, 5e-3, Scheme::IFMidpoint);
    const double p = std::log2(e1 / e2);
    CHECK(p >= 1.8);
    CHECK(p <= 2.2);
}

TEST_CASE("mean is conserved exactly and L2 drifts at the roundoff scale") {
    Grid g(64);
    SpectralField u0 = make_cos(g, 1, 0.5) + make_sin(g, 2, 0.25);
    u0.set_mode(0, cplx{0.125, 0.0});
    EvolveParams p;
    p.t_final = 0.5;
    p.dt = 2.5e-3;
    auto traj = evolve(u0, p);
    CHECK(traj.diag.mean_drift_max <= 1e-14);
    CHECK(traj.diag.l2_drift_max <= 1e-9);
}

TEST_CASE("one forced step from rest reproduces the Duhamel slope") {
    Grid g(32);
    SpectralField zero(g);
    auto f = [&](double) { return make_cos(g, 1); };
    const double dt = 1e-3;
    auto u = step(zero, 0.0, StepParams{dt, Scheme::IFRK4, Dealias::None}, f);
    auto lead = cplx{dt, 0.0} * make_cos(g, 1);
    CHECK(sobolev_norm(u - lead, 0.0) <= 2.0 * dt * dt);
}

TEST_CASE("stepping forward then backward returns to the initial state") {
    Grid g(32);
    auto u0 = make_cos(g, 1, 0.25);
    StepParams fwd{1e-2, Scheme::IFRK4, Dealias::None};
    StepParams bwd{-1e-2, Scheme::IFRK4, Dealias::None};
    SpectralField u = u0;
    for (int i = 0; i < 50; ++i) u = step(u, 1e-2 * i, fwd);
    for (int i = 50; i > 0; --i) u = step(u, 1e-2 * i, bwd);
    CHECK(sobolev_norm(u - u0, 0.0) <= 1e-6);
}

TEST_CASE("blowup is reported as an instability with step information") {
    Grid g(64);
    auto u0 = make_cos(g, 1, 40.0);
    EvolveParams p;
    p.t_final = 10.0;
    p.dt = 0.5;
    CHECK_THROWS_WITH_AS(evolve(u0, p), doctest::Contains("non-finite"), InstabilityError);
}

TEST_CASE("under-resolved data raises the tail advisory without aborting") {
    Grid g(64);
    auto u0 = make_cos(g, 1, 0.5) + make_cos(g, 20, 0.01);
    EvolveParams p;
    p.t_final = 0.01;
    p.dt = 1e-3;
    auto traj = evolve(u0, p);
    CHECK(traj.diag.tail_advisory);
    CHECK(traj.diag.tail_ratio > 1e-8);
    CHECK(!traj.diag.message.empty());

    auto smooth = evolve(make_cos(g, 1, 0.5), p);
    CHECK(!smooth.diag.tail_advisory);
}

TEST_CASE("storage honors store_every and lands exactly on t_final") {
    Grid g(32);
    EvolveParams p;
    p.t_final = 0.1;
    p.dt = 1e-3;
    p.store_every = 20;
    auto traj = evolve(make_cos(g, 1, 0.2), p);
    REQUIRE(traj.times.size() == 6); // t = 0 plus 5 stored blocks of 20 steps
    CHECK(traj.times.back() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(traj.times[1] == doctest::Approx(0.02).epsilon(1e-13));
}

TEST_CASE("evolution is bitwise deterministic across repeated runs") {
    Grid g(64);
    auto u0 = random_real_field(g, 57u, [](int n) { return 0.2 / (1.0 + n * n); });
    EvolveParams p;
    p.t_final = 0.2;
    p.dt = 2e-3;
    auto a = evolve(u0, p);
    auto b = evolve(u0, p);
    CHECK(coeff_distance(a.states.back(), b.states.back()) == 0.0);
}

TEST_CASE("trajectory files round trip bit for bit") {
    Grid g(32);
    EvolveParams p;
    p.t_final = 0.05;
    p.dt = 1e-3;
    p.store_every = 10;
    auto traj = evolve(make_cos(g, 1, 0.3) + make_sin(g, 3, 0.1), p);
    traj.config_echo = R"({"note":"io-test"})";

    const auto path = (std::filesystem::temp_directory_path() / "bolab_traj_test.bin").string();
    save_trajectory(traj, path);
    auto loaded = load_trajectory(path);
    std::remove(path.c_str());

    REQUIRE(loaded.times.size() == traj.times.size());
    CHECK(loaded.grid == traj.grid);
    for (size_t i = 0; i < traj.times.size(); ++i) {
        CHECK(loaded.times[i] == traj.times[i]);
        CHECK(coeff_distance(loaded.states[i], traj.states[i]) == 0.0);
    }
    CHECK(loaded.diag.l2_drift_max == traj.diag.l2_drift_max);
    CHECK(loaded.config_echo == traj.config_echo);
}

TEST_CASE("evolve validates its inputs") {
    Grid g(32);
    auto u0 = make_exp(g, 1); // complex, not real
    EvolveParams p;
    p.t_final = 0.1;
    CHECK_THROWS_AS(evolve(u0, p), PreconditionError);
    EvolveParams bad;
    bad.t_final = -1.0;
    CHECK_THROWS_AS(evolve(make_cos(g, 1), bad), ParamError);
}

TEST_SUITE_END();
