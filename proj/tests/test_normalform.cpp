#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "bolab/gauge.hpp"
#include "bolab/normalform.hpp"
#include "bolab/rng.hpp"
#include "bolab/symbols.hpp"
#include "bolab/transform.hpp"
#include "test_common.hpp"

using namespace bolab;
using namespace testutil;

namespace {

cplx mval(nf::Term id, std::initializer_list<double> fr, double M,
          nf::MultForm form = nf::MultForm::Compositional, DomainMode md = DomainMode::Torus) {
    std::vector<double> v(fr);
    return nf::multiplier_value(id, v, M, form, md);
}

SpectralField evalv(nf::Term id, const std::vector<SpectralField>& f, double t, double M,
                    const nf::EvalOptions& opts = {}) {
    return nf::eval_term(id, std::span<const SpectralField>(f.data(), f.size()), t, M, opts);
}

// Arbitrary complex band-limited field with zero mean (a stand-in for the
// twisted gauge field, which is genuinely complex).
SpectralField random_complex_field(const Grid& g, uint64_t seed, double rate = 0.35) {
    SpectralField f(g);
    const int K = g.max_mode();
    for (int n = -K; n <= K; ++n) {
        if (n == 0) continue;
        const double amp = std::exp(-rate * std::abs(n));
        const double th = 2.0 * pi * rng::uniform(seed, 7, static_cast<uint64_t>(n + K));
        const double sc = 0.2 + rng::uniform(seed, 8, static_cast<uint64_t>(n + K));
        f.set_mode(n, std::polar(amp * sc, th));
    }
    return f;
}

// Signed integer in [-range, range] from the keyed stream.
long long rand_int(uint64_t seed, uint64_t stream, uint64_t idx, int range) {
    return static_cast<long long>(rng::uniform(seed, stream, idx) * (2 * range + 1)) - range;
}

} // namespace

TEST_SUITE_BEGIN("normalform");

TEST_CASE("resonance phases: hand values, overload agreement, telescoping") {
    CHECK(nf::omega(3ll, 5ll, -2ll) == -12);
    CHECK(nf::omega(2ll, 1ll, 1ll) == 2);
    CHECK(nf::omega(-3ll, -5ll, 2ll) == 12);
    CHECK(nf::omega(3.0, 5.0, -2.0) == doctest::Approx(-12.0).epsilon(1e-15));

    // On the sigma support Omega factors as 2 xi xi2.
    CHECK(nf::omega(3ll, 5ll, -2ll) == 2 * 3 * (-2));
    CHECK(nf::omega(7ll, 9ll, -2ll) == 2 * 7 * (-2));

    auto w1 = [](long long x) { return x * std::llabs(x); };
    for (int idx = 0; idx < 200; ++idx) {
        const long long a = rand_int(11, 1, static_cast<uint64_t>(idx), 50);
        const long long b = rand_int(11, 2, static_cast<uint64_t>(idx), 50);
        const long long c = rand_int(11, 3, static_cast<uint64_t>(idx), 50);
        const long long d = rand_int(11, 4, static_cast<uint64_t>(idx), 50);
        const long long xi = a + b + c + d;
        const long long tele3 = w1(xi) - w1(a) - w1(b) - w1(c) - w1(d);
        const long long tele2 = w1(a + b + c) - w1(a) - w1(b) - w1(c);
        for (int j = 1; j <= 3; ++j) {
            CHECK(nf::omega2(j, a + b + c, a, b, c) == tele2);
            for (int k = 1; k <= 3; ++k) {
                const long long o3 = nf::omega3(j, k, xi, a, b, c, d);
                CHECK(o3 == tele3);
                CHECK(nf::omega3(j, k, double(xi), double(a), double(b), double(c), double(d)) ==
                      doctest::Approx(double(o3)).epsilon(1e-14));
            }
        }
    }

    CHECK_THROWS_AS(nf::omega2(0, 1ll, 1ll, 1ll, 1ll), ParamError);
    CHECK_THROWS_AS(nf::omega3(1, 4, 1ll, 1ll, 1ll, 1ll, 1ll), ParamError);
}

TEST_CASE("sigma support and the bilinear kernel value") {
    CHECK(nf::sigma(3, 5, -2) == 1.0);
    CHECK(nf::sigma(3, -5, 8) == 0.0);  // chi_+(xi1) kills it
    CHECK(nf::sigma(-3, 5, -8) == 0.0); // chi_+(xi) kills it
    CHECK(nf::sigma(3, 1, 2) == 0.0);   // xi2 >= 0
    CHECK(nf::sigma(1, 1, 0) == 0.0);   // xi2 = 0 is not negative

    // mu1(3, 5, -2) = -2i * (3 * -2 / 5) = +2.4i. N1 ignores M entirely.
    CHECK(std::abs(mval(nf::Term::N1, {3, 5, -2}, 0.0) - cplx{0.0, 2.4}) < 1e-15);
    CHECK(std::abs(mval(nf::Term::N1, {3, 5, -2}, 1e9) - cplx{0.0, 2.4}) < 1e-15);
    CHECK(mval(nf::Term::N1, {3, 5, 2}, 0.0) == cplx{0.0, 0.0});

    // Line mode: the chi_+ ramp is smooth and hits 1/2 in the middle.
    CHECK(nf::sigma(0.75, 5, -2, DomainMode::Line) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(nf::sigma(0.4, 5, -2, DomainMode::Line) == 0.0);
    CHECK(nf::sigma(1.1, 5, -2, DomainMode::Line) == 1.0);
}

TEST_CASE("N1 boundary kernel: hand value, M gate, parameter policy") {
    // mu1 / (i Omega) at (3, 5, -2): 2.4i / (-12 i) = -0.2.
    CHECK(std::abs(mval(nf::Term::N1_0, {3, 5, -2}, 4.0) - cplx{-0.2, 0.0}) < 1e-15);
    CHECK(std::abs(mval(nf::Term::N1_0, {3, 5, -2}, 11.99) - cplx{-0.2, 0.0}) < 1e-15);
    // |Omega| = 12 is not > 12: the far cutoff removes the tuple.
    CHECK(mval(nf::Term::N1_0, {3, 5, -2}, 12.0) == cplx{0.0, 0.0});

    CHECK_THROWS_AS(mval(nf::Term::N1_0, {3, 5, -2}, 0.5), ParamError);
    CHECK_THROWS_AS(mval(nf::Term::N3_33, {7, 9, -3, -2, 3}, 0.25), ParamError);
    CHECK_THROWS_AS(mval(nf::Term::N2_leM, {3, 9, -2, -4}, -1.0), ParamError);
    CHECK_NOTHROW(mval(nf::Term::N2_2, {3, 9, -2, -4}, 0.5)); // no phase division
    CHECK_THROWS_AS(mval(nf::Term::N1, {3, 5}, 0.0), ParamError); // wrong tuple size

    // Single-pair field check, phase included: wt = e^{i5x}, ut = e^{-2ix}
    // feeds only (3; 5, -2), so the output is one mode with the boundary value
    // times e^{it Omega}.
    Grid g(32);
    const double t = 0.37;
    auto out = evalv(nf::Term::N1_0, {make_exp(g, 5), make_exp(g, -2)}, t, 4.0);
    CHECK(std::abs(out.mode(3) - cplx{-0.2, 0.0} * std::polar(1.0, -12.0 * t)) < 1e-14);
    for (int n = -g.num_modes / 2; n <= g.max_mode(); ++n)
        if (n != 3) CHECK(std::abs(out.mode(n)) == 0.0);

    auto gated = evalv(nf::Term::N1_0, {make_exp(g, 5), make_exp(g, -2)}, t, 12.0);
    CHECK(gated.max_abs() == 0.0);
}

TEST_CASE("stage-one split is exact: N1 = N1_leM + N1_gtM") {
    const double M = 6.0;
    for (long long xi = -12; xi <= 12; ++xi)
        for (long long x1 = -12; x1 <= 12; ++x1)
            for (long long x2 = -12; x2 <= 12; ++x2) {
                const cplx full = mval(nf::Term::N1, {double(xi), double(x1), double(x2)}, M);
                const cplx lo = mval(nf::Term::N1_leM, {double(xi), double(x1), double(x2)}, M);
                const cplx hi = mval(nf::Term::N1_gtM, {double(xi), double(x1), double(x2)}, M);
                CHECK(std::abs(full - lo - hi) == 0.0);
                CHECK(std::abs(lo) * std::abs(hi) == 0.0); // disjoint regions
            }

    Grid g(64);
    auto wt = random_complex_field(g, 101);
    auto ut = random_real_field(g, 102, [](int n) { return std::exp(-0.3 * n); });
    auto full = evalv(nf::Term::N1, {wt, ut}, 0.21, M);
    auto split = evalv(nf::Term::N1_leM, {wt, ut}, 0.21, M);
    split += evalv(nf::Term::N1_gtM, {wt, ut}, 0.21, M);
    CHECK(rel_l2_diff(split, full) < 1e-14);
}

TEST_CASE("N1 agrees with the physical-space operator composition") {
    // The same bilinear term assembled the long way round:
    //   -2 P_+ dx [ dx^{-1} f * P_- dx g ]
    // with FFT products. chi_+(xi1) is implied by chi_+(xi) 1_{<0}(xi2) on the
    // convolution constraint, so the two routes agree for any zero-mean f.
    Grid g(64);
    auto f = random_complex_field(g, 55);
    auto u = random_real_field(g, 56, [](int n) { return std::exp(-0.25 * n); });

    auto direct = evalv(nf::Term::N1, {f, u}, 0.0, 0.0);

    auto a = inverse_derivative(f);
    auto b = apply_symbol(symbols::riesz_minus(), apply_symbol(symbols::derivative(), u));
    auto prod = multiply(a, b, 2);
    auto phys = apply_symbol(symbols::riesz_plus(), apply_symbol(symbols::derivative(), prod));
    phys *= cplx{-2.0, 0.0};

    CHECK(rel_l2_diff(direct, phys) < 1e-10);
}

TEST_CASE("second trilinear family: hand values and closed phase forms") {
    // m2_1 at (3; 9, -4, -2): -2i * (-4/9) = (8/9) i, with both far gates open
    // at M = 4 (Omega = -12, Omega2_1 = -52).
    CHECK(nf::omega2(1, 3ll, 9ll, -4ll, -2ll) == -52);
    CHECK(nf::omega2(1, 3ll, 9ll, -4ll, -2ll) == 2 * 3 * (-2) + 2 * 5 * (-4));
    CHECK(std::abs(mval(nf::Term::N2_1, {3, 9, -4, -2}, 4.0) - cplx{0.0, 8.0 / 9.0}) < 1e-15);
    // Support constants: |m2_1| * xi1 / |xi2| = 2 exactly.
    CHECK(std::abs(mval(nf::Term::N2_1, {3, 9, -4, -2}, 4.0)) * 9.0 / 4.0 ==
          doctest::Approx(2.0).epsilon(1e-14));
    // xi2 >= 0 kills the j = 1 kernel.
    CHECK(mval(nf::Term::N2_1, {3, 9, 4, -10}, 4.0) == cplx{0.0, 0.0});

    // (-,-) branch closed form of the composed phase: 2 xi xi23 - 2 xi2 xi3.
    CHECK(nf::omega2(2, 3ll, 9ll, -2ll, -4ll) == 2 * 3 * (-6) - 2 * (-2) * (-4));
    // (-,+) branch: 2 xi12 xi23.
    CHECK(nf::omega2(3, 3ll, 9ll, -8ll, 2ll) == 2 * (3 - 2) * (-6));

    // N2_full at (3; 9, -2, -4): i * (xi23 / xi1) = -(6/9) i (far gate: -36).
    CHECK(std::abs(mval(nf::Term::N2_full, {3, 9, -2, -4}, 4.0) - cplx{0.0, -6.0 / 9.0}) <
          1e-15);
}

TEST_CASE("trilinear partition is exact pointwise, mirror branch included") {
    const double M = 4.0;
    auto piece_sum = [&](double xi, double x1, double x2, double x3) {
        return mval(nf::Term::N2_leM, {xi, x1, x2, x3}, M) +
               mval(nf::Term::N2_2, {xi, x1, x2, x3}, M) +
               mval(nf::Term::N2_3, {xi, x1, x2, x3}, M) +
               mval(nf::Term::N2_3, {xi, x1, x3, x2}, M); // mirror: slots 2,3 swapped
    };

    // The tuple that separates the xi13 mirror geometry from a naive xi12 one:
    // (3; 13, 2, -12) has |xi12| > 1, |xi13| <= 1, |Omega2| = 20 > M.
    {
        const cplx full = mval(nf::Term::N2_full, {3, 13, 2, -12}, M);
        CHECK(std::abs(full) > 0.5);
        CHECK(std::abs(full - piece_sum(3, 13, 2, -12)) == 0.0);
        // It belongs to the near piece, not to any far region.
        CHECK(mval(nf::Term::N2_leM, {3, 13, 2, -12}, M) == full);
        CHECK(mval(nf::Term::N2_2, {3, 13, 2, -12}, M) == cplx{0.0, 0.0});
        CHECK(mval(nf::Term::N2_3, {3, 13, 2, -12}, M) == cplx{0.0, 0.0});
    }

    unsigned support_hits = 0;
    for (uint64_t idx = 0; idx < 4000; ++idx) {
        const double xi = double(rand_int(21, 1, idx, 30));
        const double x1 = double(rand_int(21, 2, idx, 30));
        const double x2 = double(rand_int(21, 3, idx, 30));
        const double x3 = double(rand_int(21, 4, idx, 30));
        const cplx full = mval(nf::Term::N2_full, {xi, x1, x2, x3}, M);
        CHECK(std::abs(full - piece_sum(xi, x1, x2, x3)) == 0.0);
        if (full != cplx{0.0, 0.0}) ++support_hits;
    }
    CHECK(support_hits > 100); // the scan actually exercised the support

    // Operator level: with both u-slots equal the mirror region relabels onto
    // N2_3, so the full family is N2_leM + N2_2 + 2 N2_3.
    Grid g(32);
    auto wt = random_complex_field(g, 301);
    auto ut = random_real_field(g, 302, [](int n) { return std::exp(-0.2 * n); });
    const double t = 0.13;
    auto full = evalv(nf::Term::N2_full, {wt, ut, ut}, t, M);
    auto sum = evalv(nf::Term::N2_leM, {wt, ut, ut}, t, M);
    sum += evalv(nf::Term::N2_2, {wt, ut, ut}, t, M);
    auto n3 = evalv(nf::Term::N2_3, {wt, ut, ut}, t, M);
    n3 *= cplx{2.0, 0.0};
    sum += n3;
    CHECK(rel_l2_diff(sum, full) < 1e-13);
}

TEST_CASE("boundary kernels are the far kernels divided by i Omega2") {
    const double M = 4.0;
    const std::array<std::pair<nf::Term, nf::Term>, 3> pairs{{
        {nf::Term::N2_10, nf::Term::N2_1},
        {nf::Term::N2_20, nf::Term::N2_2},
        {nf::Term::N2_30, nf::Term::N2_3},
    }};
    unsigned hits = 0;
    for (uint64_t idx = 0; idx < 4000; ++idx) {
        const double xi = double(rand_int(31, 1, idx, 24));
        const double x1 = double(rand_int(31, 2, idx, 24));
        const double x2 = double(rand_int(31, 3, idx, 24));
        const double x3 = double(rand_int(31, 4, idx, 24));
        for (int j = 1; j <= 3; ++j) {
            const auto [bnd_id, far_id] = pairs[static_cast<size_t>(j - 1)];
            const cplx far = mval(far_id, {xi, x1, x2, x3}, M);
            const cplx bnd = mval(bnd_id, {xi, x1, x2, x3}, M);
            if (far == cplx{0.0, 0.0}) {
                CHECK(bnd == cplx{0.0, 0.0});
                continue;
            }
            ++hits;
            const double om2 = nf::omega2(j, xi, x1, x2, x3);
            CHECK(std::abs(bnd * cplx{0.0, om2} - far) < 1e-14 * std::abs(far));
        }
    }
    CHECK(hits > 200);
    CHECK_THROWS_AS(mval(nf::Term::N2_10, {3, 9, -4, -2}, 0.5), ParamError);
}

TEST_CASE("quadrilinear multipliers: expanded equals compositional") {
    // Hand-checked point for the (3,3) case: value i/108 on both routes.
    const cplx v_comp = mval(nf::Term::N3_33, {7, 9, -3, -2, 3}, 4.0, nf::MultForm::Compositional);
    const cplx v_exp = mval(nf::Term::N3_33, {7, 9, -3, -2, 3}, 4.0, nf::MultForm::Expanded);
    CHECK(std::abs(v_comp - cplx{0.0, 1.0 / 108.0}) < 1e-16);
    CHECK(std::abs(v_exp - cplx{0.0, 1.0 / 108.0}) < 1e-16);
    // xi34 < 0 leaves the (3,3) support on both routes.
    CHECK(mval(nf::Term::N3_33, {2, 7, -3, -5, 3}, 4.0, nf::MultForm::Compositional) ==
          cplx{0.0, 0.0});
    CHECK(mval(nf::Term::N3_33, {2, 7, -3, -5, 3}, 4.0, nf::MultForm::Expanded) ==
          cplx{0.0, 0.0});

    const std::array<nf::Term, 9> quads{nf::Term::N3_11, nf::Term::N3_12, nf::Term::N3_13,
                                        nf::Term::N3_21, nf::Term::N3_22, nf::Term::N3_23,
                                        nf::Term::N3_31, nf::Term::N3_32, nf::Term::N3_33};
    // The two routes coincide on the convolution constraint xi = sum(xi_i)
    // (the expanded denominators are simplified with it), so the scan draws
    // the inputs and derives the output frequency.
    std::array<unsigned, 9> hits{};
    for (uint64_t idx = 0; idx < 20000; ++idx) {
        const double x1 = double(rand_int(41, 2, idx, 20));
        const double x2 = double(rand_int(41, 3, idx, 20));
        const double x3 = double(rand_int(41, 4, idx, 20));
        const double x4 = double(rand_int(41, 5, idx, 20));
        const double xi = x1 + x2 + x3 + x4;
        for (size_t q = 0; q < quads.size(); ++q) {
            const cplx a = mval(quads[q], {xi, x1, x2, x3, x4}, 4.0, nf::MultForm::Compositional);
            const cplx b = mval(quads[q], {xi, x1, x2, x3, x4}, 4.0, nf::MultForm::Expanded);
            if (a == cplx{0.0, 0.0} && b == cplx{0.0, 0.0}) continue;
            ++hits[q];
            CHECK(std::abs(a - b) < 1e-12 * std::max(std::abs(a), std::abs(b)));
        }
    }
    for (size_t q = 0; q < quads.size(); ++q) {
        INFO("term " << nf::term_name(quads[q]));
        CHECK(hits[q] > 20); // every case was exercised on its support
    }
}

TEST_CASE("quadrilinear evaluation: grouped path equals the direct sum") {
    Grid g(24);
    auto wt = random_complex_field(g, 401, 0.3);
    auto ut = random_real_field(g, 402, [](int n) { return std::exp(-0.25 * n); });
    const std::vector<SpectralField> fields{wt, ut, ut, ut};
    const double t = 0.29, M = 4.0;

    const std::array<nf::Term, 9> quads{nf::Term::N3_11, nf::Term::N3_12, nf::Term::N3_13,
                                        nf::Term::N3_21, nf::Term::N3_22, nf::Term::N3_23,
                                        nf::Term::N3_31, nf::Term::N3_32, nf::Term::N3_33};
    for (nf::Term id : quads) {
        INFO("term " << nf::term_name(id));
        nf::EvalOptions direct;
        direct.path = nf::EvalOptions::Path::Direct;
        nf::EvalOptions grouped;
        grouped.path = nf::EvalOptions::Path::Grouped;
        auto a = evalv(id, fields, t, M, direct);
        auto b = evalv(id, fields, t, M, grouped);
        CHECK(a.max_abs() > 0.0); // the comparison is not vacuous
        CHECK(rel_l2_diff(b, a) < 1e-10);
    }

    // The expanded kernels give the same field through the direct path.
    nf::EvalOptions expanded;
    expanded.path = nf::EvalOptions::Path::Direct;
    expanded.form = nf::MultForm::Expanded;
    auto via_exp = evalv(nf::Term::N3_33, fields, t, M, expanded);
    nf::EvalOptions direct;
    direct.path = nf::EvalOptions::Path::Direct;
    auto via_comp = evalv(nf::Term::N3_33, fields, t, M, direct);
    CHECK(rel_l2_diff(via_exp, via_comp) < 1e-12);
}

TEST_CASE("absolute-multiplier evaluation majorizes the true term") {
    Grid g(24);
    auto wt = random_complex_field(g, 501, 0.3);
    auto ut = random_real_field(g, 502, [](int n) { return std::exp(-0.3 * n); });

    // |coefficients| of a field, as a field.
    auto abs_field = [](const SpectralField& f) {
        SpectralField a(f.grid());
        for (int n = -f.grid().num_modes / 2 + 1; n <= f.grid().max_mode(); ++n)
            a.set_mode(n, cplx{std::abs(f.mode(n)), 0.0});
        return a;
    };
    const std::vector<SpectralField> fields{wt, ut, ut, ut};
    const std::vector<SpectralField> caps{abs_field(wt), abs_field(ut), abs_field(ut),
                                          abs_field(ut)};

    nf::EvalOptions maj;
    maj.use_abs_multiplier = true;
    maj.zero_phase = true;
    for (nf::Term id : {nf::Term::N3_21, nf::Term::N3_33}) {
        INFO("term " << nf::term_name(id));
        auto value = evalv(id, fields, 0.4, 4.0);
        auto cap = evalv(id, caps, 0.4, 4.0, maj);
        for (int n = -g.num_modes / 2 + 1; n <= g.max_mode(); ++n)
            CHECK(std::abs(value.mode(n)) <= cap.mode(n).real() + 1e-12);
    }
}

TEST_CASE("eval_term is linear in every slot") {
    Grid g(16);
    auto w1 = random_complex_field(g, 601);
    auto u1 = random_real_field(g, 602, [](int n) { return std::exp(-0.2 * n); });
    auto u2 = random_real_field(g, 603, [](int n) { return std::exp(-0.3 * n); });
    auto u3 = random_real_field(g, 604, [](int n) { return std::exp(-0.25 * n); });
    const cplx a{0.7, -0.4};

    auto combo = u1;
    combo *= a;
    combo += u2;
    auto lhs = evalv(nf::Term::N2_2, {w1, combo, u3}, 0.17, 4.0);
    auto rhs = evalv(nf::Term::N2_2, {w1, u1, u3}, 0.17, 4.0);
    rhs *= a;
    rhs += evalv(nf::Term::N2_2, {w1, u2, u3}, 0.17, 4.0);
    CHECK(rel_l2_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("twists apply the advertised phases and invert exactly") {
    Grid g(32);
    auto w = random_complex_field(g, 701);
    auto u = random_real_field(g, 702, [](int n) { return std::exp(-0.3 * n); });
    const double t = 0.83;

    auto wt = nf::twist_w(w, t);
    auto ut = nf::twist_u(u, t);
    for (int n : {-5, -1, 2, 7}) {
        CHECK(std::abs(wt.mode(n) - w.mode(n) * std::polar(1.0, double(n) * n * t)) < 1e-14);
        CHECK(std::abs(ut.mode(n) - u.mode(n) * std::polar(1.0, double(n) * std::abs(n) * t)) <
              1e-14);
    }
    CHECK(max_coeff_diff(nf::untwist_w(wt, t), w) < 1e-14);
    CHECK(max_coeff_diff(nf::untwist_u(ut, t), u) < 1e-14);
}

TEST_CASE("E term equals the gauge commutator remainder") {
    Grid g(64);
    auto f = random_complex_field(g, 801);
    auto u = random_real_field(g, 802, [](int n) { return std::exp(-0.25 * n); });

    auto via_term = evalv(nf::Term::E, {f, u}, 0.7, 0.0); // t and M are inert
    auto via_gauge = negligible_term(f, u);
    CHECK(max_coeff_diff(via_term, via_gauge) < 1e-12);

    // Torus form lives at the single output mode +1.
    for (int n = -g.num_modes / 2 + 1; n <= g.max_mode(); ++n)
        if (n != 1) CHECK(std::abs(via_term.mode(n)) == 0.0);
}

TEST_CASE("evaluation rejects malformed requests") {
    Grid g(16), g2(32);
    auto w = random_complex_field(g, 901);
    auto u = random_real_field(g, 902, [](int n) { return std::exp(-0.3 * n); });
    auto u_other = random_real_field(g2, 903, [](int n) { return std::exp(-0.3 * n); });

    CHECK_THROWS_AS(evalv(nf::Term::N2_2, {w, u}, 0.0, 4.0), ParamError); // arity
    CHECK_THROWS_AS(evalv(nf::Term::N1, {w, u_other}, 0.0, 4.0), ParamError); // grids
    nf::EvalOptions grouped;
    grouped.path = nf::EvalOptions::Path::Grouped;
    CHECK_THROWS_AS(evalv(nf::Term::N2_2, {w, u, u}, 0.0, 4.0, grouped), ParamError);

    std::vector<SpectralField> fs{w, u};
    CHECK_THROWS_AS(
        nf::boundary_term(nf::Term::N1, std::span<const SpectralField>(fs.data(), 2), 0.0, 4.0),
        ParamError);
    auto bnd = nf::boundary_term(nf::Term::N1_0, std::span<const SpectralField>(fs.data(), 2),
                                 0.0, 4.0);
    CHECK(rel_l2_diff(bnd, evalv(nf::Term::N1_0, {w, u}, 0.0, 4.0)) == 0.0);
}

TEST_SUITE_END();
