#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "bolab/normalform.hpp"
#include "bolab/threads.hpp"
#include "nf_internal.hpp"

// Exhaustive integer-lattice verification of the normal-form multiplier
// algebra. Every claim the expansion rests on is checked tuple by tuple:
// indicator ranges, phase factorizations and closed forms, additivity of the
// composed phases, support inequalities, the near/far partition of the
// trilinear family, the two routes to the quadrilinear multipliers, and the
// bound-template constants. Scans run in parallel over static blocks and the
// per-block tallies are merged in scan order, so the report is deterministic
// for any thread count.

namespace bolab::nf {

namespace {

using detail::chi_p;
using detail::far;
using detail::far_half;
using detail::hi_w;
using detail::ind_neg;
using detail::ind_nonneg;
using detail::mu1;
using detail::n1_bnd;
using detail::n2_base;
using detail::n2_bnd;
using detail::n2_leM;
using detail::n2_m21;
using detail::n2_piece;
using detail::n3_comp;
using detail::n3_exp;

constexpr DomainMode kTorus = DomainMode::Torus;
constexpr size_t kMaxSamples = 32;

// Per-block tally for one check.
struct Acc {
    unsigned long long scanned = 0;
    unsigned long long support = 0;
    unsigned long long viol = 0;
    std::vector<LatticeViolation> samples;

    void violation(std::array<long long, 5> tup, std::string detail_text) {
        ++viol;
        if (samples.size() < kMaxSamples)
            samples.push_back({tup, std::move(detail_text)});
    }
};

// Running maximum with the tuple that attained it.
struct MaxTrack {
    double value = 0.0;
    std::array<long long, 5> arg{};

    void feed(double v, std::array<long long, 5> tup) {
        if (v > value) {
            value = v;
            arg = tup;
        }
    }
    void merge(const MaxTrack& o) {
        if (o.value > value) {
            value = o.value;
            arg = o.arg;
        }
    }
};

// Mirror of the static partition parallel_for uses, so each worker can be
// given its own accumulator slot and the merge can run in block order.
struct BlockPlan {
    long long total = 0;
    long long chunk = 1;
    int blocks = 1;

    BlockPlan(long long n, int threads) : total(n) {
        int nt = resolve_threads(threads);
        if (static_cast<long long>(nt) > n) nt = static_cast<int>(std::max(1ll, n));
        chunk = (n + nt - 1) / nt;
        if (chunk < 1) chunk = 1;
        blocks = static_cast<int>((n + chunk - 1) / chunk);
        if (blocks < 1) blocks = 1;
    }
    int effective_threads() const { return blocks; }
    size_t block_of(long long i0) const { return static_cast<size_t>(i0 / chunk); }
};

void merge_check(LatticeReport& report, std::string name, int range,
                 const std::vector<Acc>& blocks) {
    LatticeCheck c;
    c.name = std::move(name);
    c.range = range;
    for (const auto& b : blocks) {
        c.scanned += b.scanned;
        c.support_points += b.support;
        c.violations += b.viol;
        for (const auto& s : b.samples) {
            if (c.samples.size() >= kMaxSamples) break;
            c.samples.push_back(s);
        }
    }
    report.checks.push_back(std::move(c));
}

std::array<long long, 5> tup2(long long xi, long long x1, long long x2) {
    return {xi, x1, x2, 0, 0};
}
std::array<long long, 5> tup3(long long xi, long long x1, long long x2, long long x3) {
    return {xi, x1, x2, x3, 0};
}
std::array<long long, 5> tup4(long long xi, long long x1, long long x2, long long x3,
                              long long x4) {
    return {xi, x1, x2, x3, x4};
}

bool near_zero(cplx v) { return v == cplx{0.0, 0.0}; }

// The indicator set of the expanded quadrilinear formula for case (j, k),
// transcribed independently of the kernel code paths (sign constraints, the
// high-frequency windows and both far gates).
bool quad_template_ok(int j, int k, long long xi, long long x1, long long x2, long long x3,
                      long long x4, double M) {
    const long long s12 = x1 + x2, s23 = x2 + x3, s34 = x3 + x4;
    const long long s123 = x1 + x2 + x3, s234 = x2 + x3 + x4;
    auto pos = [](long long v) { return v >= 1; };
    auto neg = [](long long v) { return v <= -1; };
    auto nonneg = [](long long v) { return v >= 0; };
    auto big = [](long long v) { return std::llabs(v) >= 2; };
    auto far2 = [M](long long v) { return std::llabs(v) > M / 2.0; };

    switch (j * 10 + k) {
    case 11:
        return pos(xi) && pos(s12) && pos(s123) && pos(x1) && neg(x2) && neg(x3) && neg(x4) &&
               far2(xi * x4) && far2(xi * x4 + s123 * x3);
    case 12:
        return pos(xi) && pos(x1) && pos(s123) && neg(s23) && neg(x4) && far2(xi * x4) &&
               far2(xi * x4 + s123 * s23);
    case 13:
        return pos(xi) && pos(x1) && pos(s12) && neg(x2) && neg(s34) && far2(xi * s34) &&
               far2(xi * s34 + s12 * x2);
    case 21:
        return pos(xi) && pos(s12) && pos(x1) && neg(x2) && neg(x3) && neg(x4) && neg(s34) &&
               big(s123) && far2(xi * s34) && far2(xi * s34 - x3 * x4);
    case 22:
        return pos(xi) && pos(x1) && neg(s23) && neg(x4) && neg(s234) && big(s123) &&
               far2(xi * s234) && far2(xi * s234 - s23 * x4);
    case 23:
        return pos(xi) && pos(x1) && neg(x2) && neg(s34) && neg(s234) && big(s12) &&
               far2(xi * s234) && far2(xi * s234 - x2 * s34);
    case 31:
        return pos(xi) && pos(s12) && pos(x1) && neg(x2) && neg(x3) && nonneg(x4) && neg(s34) &&
               big(s123) && far2(xi * s34) && far2(s123 * s34);
    case 32:
        return pos(xi) && pos(x1) && neg(s23) && nonneg(x4) && neg(s234) && big(s123) &&
               far2(xi * s234) && far2(s123 * s234);
    case 33:
        return pos(xi) && pos(x1) && neg(x2) && nonneg(s34) && neg(s234) && big(s12) &&
               far2(xi * s234) && far2(s12 * s234);
    default:
        return false;
    }
}

} // namespace

LatticeReport verify_lattice(const LatticeParams& params) {
    if (params.pair_range < 2 || params.additivity_range < 2 || params.quad_range < 2)
        throw ParamError("verify_lattice: every scan range must be >= 2");
    if (!(params.M >= 1.0) || !std::isfinite(params.M))
        throw ParamError("verify_lattice: M >= 1 required (boundary kernels divide by the phase)");

    LatticeReport report;
    report.params = params;
    const double M = params.M;

    // ---------------------------------------------------------------- pairs
    // One pass over (xi1, xi2) with xi = xi1 + xi2 covers the bilinear layer.
    {
        const int R = params.pair_range;
        const long long n = 2ll * R + 1;
        BlockPlan plan(n, params.threads);
        struct PairBlocks {
            Acc ind, phase, ineq;
            MaxTrack mu1_ratio, n1_0_ratio;
            Acc bounds;
        };
        std::vector<PairBlocks> acc(static_cast<size_t>(plan.blocks));

        parallel_for(0, n, plan.effective_threads(), [&](long long i0, long long i1) {
            auto& B = acc[plan.block_of(i0)];
            for (long long i = i0; i < i1; ++i) {
                const long long x1 = -R + i;
                for (long long x2 = -R; x2 <= R; ++x2) {
                    const long long xi = x1 + x2;
                    const auto T = tup2(xi, x1, x2);
                    const double s = sigma(double(xi), double(x1), double(x2), kTorus);

                    ++B.ind.scanned;
                    const bool on = xi >= 1 && x1 >= 1 && x2 <= -1;
                    if (s != 0.0 && s != 1.0)
                        B.ind.violation(T, "sigma outside {0,1}: " + std::to_string(s));
                    else if ((s == 1.0) != on)
                        B.ind.violation(T, "sigma disagrees with its indicator definition");
                    if (on) ++B.ind.support;

                    ++B.phase.scanned;
                    ++B.ineq.scanned;
                    ++B.bounds.scanned;
                    if (!on) continue;
                    ++B.phase.support;
                    ++B.ineq.support;

                    const long long om = omega(xi, x1, x2);
                    if (om != 2 * xi * x2)
                        B.phase.violation(T, "Omega != 2 xi xi2 on supp sigma");
                    if (om >= 0) B.phase.violation(T, "Omega not negative on supp sigma");

                    if (!(xi < x1 && std::llabs(x2) < x1 && x1 >= 2))
                        B.ineq.violation(T, "bilinear support inequality failed");

                    // |mu1| xi1 / (xi |xi2|) is identically 2 on the support;
                    // |N1_0 multiplier| xi1 is identically 1 where the far
                    // gate is open.
                    ++B.bounds.support;
                    const double r1 = std::abs(mu1(double(xi), double(x1), double(x2), kTorus)) *
                                      double(x1) / (double(xi) * std::abs(double(x2)));
                    B.mu1_ratio.feed(r1, T);
                    if (std::abs(r1 - 2.0) > 1e-12)
                        B.bounds.violation(T, "|mu1| xi1 / (xi |xi2|) != 2");
                    if (far(double(om), M)) {
                        const double r2 =
                            std::abs(n1_bnd(double(xi), double(x1), double(x2), M, kTorus)) *
                            double(x1);
                        B.n1_0_ratio.feed(r2, T);
                        if (std::abs(r2 - 1.0) > 1e-12)
                            B.bounds.violation(T, "|N1_0 multiplier| xi1 != 1 past the gate");
                    }
                }
            }
        });

        std::vector<Acc> ind, phase, ineq, bounds;
        MaxTrack mu1_ratio, n1_0_ratio;
        for (auto& b : acc) {
            ind.push_back(std::move(b.ind));
            phase.push_back(std::move(b.phase));
            ineq.push_back(std::move(b.ineq));
            bounds.push_back(std::move(b.bounds));
            mu1_ratio.merge(b.mu1_ratio);
            n1_0_ratio.merge(b.n1_0_ratio);
        }
        merge_check(report, "sigma_indicator_values", R, ind);
        merge_check(report, "bilinear_phase_factorization", R, phase);
        merge_check(report, "bilinear_support_inequalities", R, ineq);
        merge_check(report, "bilinear_bound_constants", R, bounds);
        report.constants["C_mu1_ratio"] = mu1_ratio.value;
        report.constants["C_n1_0_ratio"] = n1_0_ratio.value;
    }

    // The three-branch closed form of Omega(xi2+xi3, xi2, xi3) must cover the
    // whole plane; this is the identity the stage-two phase bookkeeping uses.
    {
        const int R = params.pair_range;
        const long long n = 2ll * R + 1;
        BlockPlan plan(n, params.threads);
        std::vector<Acc> acc(static_cast<size_t>(plan.blocks));
        parallel_for(0, n, plan.effective_threads(), [&](long long i0, long long i1) {
            auto& B = acc[plan.block_of(i0)];
            for (long long i = i0; i < i1; ++i) {
                const long long x2 = -R + i;
                for (long long x3 = -R; x3 <= R; ++x3) {
                    ++B.scanned;
                    ++B.support;
                    // Equal signs give +-2 xi2 xi3; mixed signs factor through
                    // the sum (the extreme frequency carries the phase). The
                    // restriction to xi23 < 0 is the form stage two uses.
                    const long long s23 = x2 + x3;
                    const long long om = omega(s23, x2, x3);
                    long long want = 0;
                    if (x2 < 0 && x3 < 0)
                        want = -2 * x2 * x3;
                    else if (x2 >= 0 && x3 >= 0)
                        want = 2 * x2 * x3;
                    else if (s23 < 0)
                        want = -2 * std::max(x2, x3) * s23;
                    else
                        want = 2 * std::min(x2, x3) * s23;
                    if (om != want)
                        B.violation(tup2(s23, x2, x3), "branch closed form failed");
                    if (s23 < 0 && ((x2 >= 0 && om != -2 * x2 * s23) ||
                                    (x3 >= 0 && om != -2 * x3 * s23)))
                        B.violation(tup2(s23, x2, x3), "restricted branch form failed");
                }
            }
        });
        merge_check(report, "three_branch_phase_formula", R, acc);
    }

    // -------------------------------------------------------------- triples
    // (xi1, xi2, xi3) with xi = xi1 + xi2 + xi3: stage-two phases, closed
    // forms, support geometry, far-gate implications and the partition of the
    // unsplit trilinear family.
    {
        const int R = params.additivity_range;
        const long long n = 2ll * R + 1;
        BlockPlan plan(n, params.threads);
        struct TriBlocks {
            Acc tele, closed, ineq, far21, farmm, hiwin, part, disj, bounds;
            MaxTrack m21_ratio, base_ratio, lem_ratio, m2_ratio, m3_ratio;
            MaxTrack b10_ratio, b20_ratio, b30_ratio;
        };
        std::vector<TriBlocks> acc(static_cast<size_t>(plan.blocks));

        parallel_for(0, n, plan.effective_threads(), [&](long long i0, long long i1) {
            auto& B = acc[plan.block_of(i0)];
            for (long long i = i0; i < i1; ++i) {
                const long long x1 = -R + i;
                for (long long x2 = -R; x2 <= R; ++x2)
                    for (long long x3 = -R; x3 <= R; ++x3) {
                        const long long xi = x1 + x2 + x3;
                        const auto T = tup3(xi, x1, x2, x3);
                        const double xd = double(xi), x1d = double(x1), x2d = double(x2),
                                     x3d = double(x3);

                        // Telescoping of both stage-two phases.
                        ++B.tele.scanned;
                        ++B.tele.support;
                        bool tele_ok = true;
                        for (int j = 1; j <= 3; ++j)
                            if (omega2(j, xi, x1, x2, x3) !=
                                xi * std::llabs(xi) - x1 * std::llabs(x1) -
                                    x2 * std::llabs(x2) - x3 * std::llabs(x3))
                                tele_ok = false;
                        if (!tele_ok)
                            B.tele.violation(T, "Omega2 does not telescope");

                        const cplx m21 = n2_m21(xd, x1d, x2d, x3d, M, kTorus);
                        const cplx base = n2_base(xd, x1d, x2d, x3d, M, kTorus);
                        const cplx lem = n2_leM(xd, x1d, x2d, x3d, M, kTorus);
                        const cplx m2 = n2_piece(2, xd, x1d, x2d, x3d, M, kTorus);
                        const cplx m3 = n2_piece(3, xd, x1d, x2d, x3d, M, kTorus);
                        const cplx m3s = n2_piece(3, xd, x1d, x3d, x2d, M, kTorus);

                        // Closed phase forms on the supports that use them.
                        ++B.closed.scanned;
                        {
                            bool applied = false;
                            if (!near_zero(m21)) {
                                applied = true;
                                if (omega2(1, xi, x1, x2, x3) !=
                                    2 * xi * x3 + 2 * (x1 + x2) * x2)
                                    B.closed.violation(T, "Omega2_1 closed form failed");
                            }
                            if (!near_zero(base)) {
                                applied = true;
                                const long long om2 = omega2(2, xi, x1, x2, x3);
                                const long long s23 = x2 + x3;
                                if (x2 < 0 && x3 < 0 && om2 != 2 * xi * s23 - 2 * x2 * x3)
                                    B.closed.violation(T, "(-,-) closed form failed");
                                if (x2 < 0 && x3 >= 0 && om2 != 2 * (x1 + x2) * s23)
                                    B.closed.violation(T, "(-,+) closed form failed");
                                if (x2 >= 0 && x3 < 0 && om2 != 2 * (x1 + x3) * s23)
                                    B.closed.violation(T, "(+,-) closed form failed");
                            }
                            if (applied) ++B.closed.support;
                        }

                        // Support inequalities of the first trilinear kernel.
                        ++B.ineq.scanned;
                        if (!near_zero(m21)) {
                            ++B.ineq.support;
                            const long long s12 = x1 + x2;
                            if (!(xi < s12 && s12 < x1 && std::llabs(x3) < s12 &&
                                  std::llabs(x2) < x1))
                                B.ineq.violation(T, "m2_1 support inequality failed");
                        }

                        // On the sign support of m2_1 the second far gate is
                        // implied by the first (the two halves of the phase
                        // have equal signs).
                        ++B.far21.scanned;
                        {
                            const long long s12 = x1 + x2;
                            const bool signs = xi >= 1 && s12 >= 1 && x1 >= 1 && x2 <= -1 &&
                                               x3 <= -1;
                            if (signs && far_half(double(xi * x3), M)) {
                                ++B.far21.support;
                                if (!far_half(double(xi * x3 + s12 * x2), M))
                                    B.far21.violation(T, "second far gate not implied");
                            }
                        }

                        // On the (-,-) branch of the unsplit family the
                        // stage-two far gate follows from the stage-one gate.
                        ++B.farmm.scanned;
                        if (!near_zero(base) && x2 < 0 && x3 < 0) {
                            ++B.farmm.support;
                            if (!far(double(omega2(2, xi, x1, x2, x3)), M))
                                B.farmm.violation(T, "(-,-) far gate not implied");
                        }

                        // On each mixed-sign branch the *other* branch's
                        // high-frequency window is saturated (|xi - xi2| and
                        // |xi - xi3| are >= 2 there), so each far piece needs
                        // only its own window factor.
                        ++B.hiwin.scanned;
                        if (!near_zero(base) && (x2 < 0) != (x3 < 0)) {
                            ++B.hiwin.support;
                            if (x3 >= 0 && hi_w(double(x1 + x3), kTorus) != 1.0)
                                B.hiwin.violation(T, "(-,+): hi(xi13) not saturated");
                            if (x2 >= 0 && hi_w(double(x1 + x2), kTorus) != 1.0)
                                B.hiwin.violation(T, "(+,-): hi(xi12) not saturated");
                        }

                        // Exact pointwise partition, mirror branch included.
                        ++B.part.scanned;
                        if (!near_zero(base)) ++B.part.support;
                        if (base != lem + m2 + m3 + m3s)
                            B.part.violation(T, "partition of N2_full failed");

                        // The four pieces live on disjoint regions.
                        ++B.disj.scanned;
                        {
                            const int live = (!near_zero(lem)) + (!near_zero(m2)) +
                                             (!near_zero(m3)) + (!near_zero(m3s));
                            if (live > 0) ++B.disj.support;
                            if (live > 1)
                                B.disj.violation(T, "partition pieces overlap");
                            if (near_zero(base) && live > 0)
                                B.disj.violation(T, "piece alive off the family support");
                        }

                        // Bound-template ratios.
                        ++B.bounds.scanned;
                        const long long s23 = x2 + x3;
                        if (!near_zero(m21)) {
                            ++B.bounds.support;
                            const double r = std::abs(m21) * double(x1) / std::abs(double(x2));
                            B.m21_ratio.feed(r, T);
                            if (std::abs(r - 2.0) > 1e-12)
                                B.bounds.violation(T, "|m2_1| xi1 / |xi2| != 2");
                            const double rb = std::abs(n2_bnd(1, xd, x1d, x2d, x3d, M, kTorus)) *
                                              double(x1) * M / std::abs(double(x2));
                            B.b10_ratio.feed(rb, T);
                            if (rb > 2.0 + 1e-12)
                                B.bounds.violation(T, "|N2_10| xi1 M / |xi2| > 2");
                        }
                        if (!near_zero(base)) {
                            const double w = double(x1) / std::abs(double(s23));
                            B.base_ratio.feed(std::abs(base) * w, T);
                            B.lem_ratio.feed(std::abs(lem) * w, T);
                            B.m2_ratio.feed(std::abs(m2) * w, T);
                            B.m3_ratio.feed(std::abs(m3) * w, T);
                            for (auto [piece, label] :
                                 {std::pair{base, "base"}, std::pair{lem, "leM"},
                                  std::pair{m2, "far2"}, std::pair{m3, "far3"}})
                                if (std::abs(piece) * w > 1.0 + 1e-12)
                                    B.bounds.violation(
                                        T, std::string("|") + label + "| xi1 / |xi23| > 1");
                            if (!near_zero(m2)) {
                                const double rb =
                                    std::abs(n2_bnd(2, xd, x1d, x2d, x3d, M, kTorus)) *
                                    double(x1) * M / std::abs(double(s23));
                                B.b20_ratio.feed(rb, T);
                                if (rb > 1.0 + 1e-12)
                                    B.bounds.violation(T, "|N2_20| xi1 M / |xi23| > 1");
                            }
                            if (!near_zero(m3)) {
                                const double rb =
                                    std::abs(n2_bnd(3, xd, x1d, x2d, x3d, M, kTorus)) *
                                    double(x1) * M / std::abs(double(s23));
                                B.b30_ratio.feed(rb, T);
                                if (rb > 1.0 + 1e-12)
                                    B.bounds.violation(T, "|N2_30| xi1 M / |xi23| > 1");
                            }
                        }
                    }
            }
        });

        std::vector<Acc> tele, closed, ineq, far21, farmm, hiwin, part, disj, bounds;
        MaxTrack m21r, baser, lemr, m2r, m3r, b10r, b20r, b30r;
        for (auto& b : acc) {
            tele.push_back(std::move(b.tele));
            closed.push_back(std::move(b.closed));
            ineq.push_back(std::move(b.ineq));
            far21.push_back(std::move(b.far21));
            farmm.push_back(std::move(b.farmm));
            hiwin.push_back(std::move(b.hiwin));
            part.push_back(std::move(b.part));
            disj.push_back(std::move(b.disj));
            bounds.push_back(std::move(b.bounds));
            m21r.merge(b.m21_ratio);
            baser.merge(b.base_ratio);
            lemr.merge(b.lem_ratio);
            m2r.merge(b.m2_ratio);
            m3r.merge(b.m3_ratio);
            b10r.merge(b.b10_ratio);
            b20r.merge(b.b20_ratio);
            b30r.merge(b.b30_ratio);
        }
        const int R2 = params.additivity_range;
        merge_check(report, "trilinear_phase_telescoping", R2, tele);
        merge_check(report, "trilinear_closed_phase_forms", R2, closed);
        merge_check(report, "m21_support_inequalities", R2, ineq);
        merge_check(report, "m21_second_far_implied", R2, far21);
        merge_check(report, "n2_far_implied_minus_minus", R2, farmm);
        merge_check(report, "hi_window_saturation", R2, hiwin);
        merge_check(report, "trilinear_partition", R2, part);
        merge_check(report, "trilinear_region_disjointness", R2, disj);
        merge_check(report, "trilinear_bound_constants", R2, bounds);
        report.constants["C_m21_ratio"] = m21r.value;
        report.constants["C_n2_base_ratio"] = baser.value;
        report.constants["C_n2_leM_ratio"] = lemr.value;
        report.constants["C_n2_2_ratio"] = m2r.value;
        report.constants["C_n2_3_ratio"] = m3r.value;
        report.constants["C_n2_10_ratio"] = b10r.value;
        report.constants["C_n2_20_ratio"] = b20r.value;
        report.constants["C_n2_30_ratio"] = b30r.value;
    }

    // ---------------------------------------------------- phase additivity
    // All nine composed third-stage phases telescope to
    // omega(xi) - sum_i omega(xi_i) on the constraint xi = sum xi_i.
    {
        const int R = params.additivity_range;
        const long long n = 2ll * R + 1;
        BlockPlan plan(n, params.threads);
        std::vector<Acc> acc(static_cast<size_t>(plan.blocks));
        parallel_for(0, n, plan.effective_threads(), [&](long long i0, long long i1) {
            auto& B = acc[plan.block_of(i0)];
            for (long long i = i0; i < i1; ++i) {
                const long long x1 = -R + i;
                for (long long x2 = -R; x2 <= R; ++x2)
                    for (long long x3 = -R; x3 <= R; ++x3) {
                        // Hoist the three-frequency part of the target.
                        const long long part3 = x1 * std::llabs(x1) + x2 * std::llabs(x2) +
                                                x3 * std::llabs(x3);
                        for (long long x4 = -R; x4 <= R; ++x4) {
                            ++B.scanned;
                            ++B.support;
                            const long long xi = x1 + x2 + x3 + x4;
                            const long long want =
                                xi * std::llabs(xi) - part3 - x4 * std::llabs(x4);
                            bool ok = true;
                            for (int j = 1; j <= 3 && ok; ++j)
                                for (int k = 1; k <= 3 && ok; ++k)
                                    if (omega3(j, k, xi, x1, x2, x3, x4) != want) ok = false;
                            if (!ok)
                                B.violation(tup4(xi, x1, x2, x3, x4),
                                            "Omega3 does not telescope");
                        }
                    }
            }
        });
        merge_check(report, "phase_additivity", R, acc);
    }

    // ------------------------------------------------------------ quadruples
    // The two routes to every quadrilinear multiplier agree on the constraint
    // surface, their supports match the printed templates, and the pinned
    // two-zone bound of the (3,3) kernel holds.
    {
        const int R = params.quad_range;
        const long long n = 2ll * R + 1;
        BlockPlan plan(n, params.threads);
        struct QuadBlocks {
            Acc dual, sign, bounds;
            MaxTrack m33_zone;
        };
        std::vector<QuadBlocks> acc(static_cast<size_t>(plan.blocks));

        parallel_for(0, n, plan.effective_threads(), [&](long long i0, long long i1) {
            auto& B = acc[plan.block_of(i0)];
            for (long long i = i0; i < i1; ++i) {
                const long long x1 = -R + i;
                for (long long x2 = -R; x2 <= R; ++x2)
                    for (long long x3 = -R; x3 <= R; ++x3)
                        for (long long x4 = -R; x4 <= R; ++x4) {
                            const long long xi = x1 + x2 + x3 + x4;
                            const auto T = tup4(xi, x1, x2, x3, x4);
                            const double xd = double(xi), x1d = double(x1), x2d = double(x2),
                                         x3d = double(x3), x4d = double(x4);
                            ++B.dual.scanned;
                            ++B.sign.scanned;
                            ++B.bounds.scanned;
                            for (int j = 1; j <= 3; ++j)
                                for (int k = 1; k <= 3; ++k) {
                                    const cplx a =
                                        n3_comp(j, k, xd, x1d, x2d, x3d, x4d, M, kTorus);
                                    const cplx b =
                                        n3_exp(j, k, xd, x1d, x2d, x3d, x4d, M, kTorus);
                                    const bool za = near_zero(a), zb = near_zero(b);
                                    if (!za || !zb) ++B.dual.support;
                                    if (za != zb ||
                                        (!za && std::abs(a - b) >
                                                    1e-12 * std::max(std::abs(a), std::abs(b))))
                                        B.dual.violation(
                                            T, "route mismatch in case (" + std::to_string(j) +
                                                   "," + std::to_string(k) + ")");
                                    if (!za) {
                                        ++B.sign.support;
                                        if (!quad_template_ok(j, k, xi, x1, x2, x3, x4, M))
                                            B.sign.violation(
                                                T, "support leak in case (" + std::to_string(j) +
                                                       "," + std::to_string(k) + ")");
                                    }
                                    if (j == 3 && k == 3 && !za) {
                                        // Two-zone decay: 1/xi12 on the high
                                        // window, 1/min(xi1, |xi12|) below it.
                                        ++B.bounds.support;
                                        const long long s12 = x1 + x2;
                                        const double wz =
                                            s12 >= 2 ? double(s12)
                                                     : std::min(double(x1),
                                                                std::abs(double(s12)));
                                        const double r = std::abs(a) * wz;
                                        B.m33_zone.feed(r, T);
                                        if (r > 1.0 + 1e-12)
                                            B.bounds.violation(T, "two-zone bound of m33 failed");
                                    }
                                }
                        }
            }
        });

        std::vector<Acc> dual, sign, bounds;
        MaxTrack m33;
        for (auto& b : acc) {
            dual.push_back(std::move(b.dual));
            sign.push_back(std::move(b.sign));
            bounds.push_back(std::move(b.bounds));
            m33.merge(b.m33_zone);
        }
        merge_check(report, "quad_dual_route", R, dual);
        merge_check(report, "quad_sign_supports", R, sign);
        merge_check(report, "quad_bound_constants", R, bounds);
        report.constants["C_m33_zone"] = m33.value;
    }

    report.pass = true;
    for (const auto& c : report.checks)
        if (c.violations != 0) report.pass = false;
    return report;
}

std::string LatticeReport::to_json() const {
    nlohmann::json j;
    j["params"] = {{"pair_range", params.pair_range},
                   {"additivity_range", params.additivity_range},
                   {"quad_range", params.quad_range},
                   {"M", params.M}};
    j["pass"] = pass;
    j["constants"] = nlohmann::json::object();
    for (const auto& [k, v] : constants) j["constants"][k] = v;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["range"] = c.range;
        jc["scanned"] = c.scanned;
        jc["support_points"] = c.support_points;
        jc["violations"] = c.violations;
        jc["samples"] = nlohmann::json::array();
        for (const auto& s : c.samples) {
            nlohmann::json js;
            js["tuple"] = s.tuple;
            js["detail"] = s.detail;
            jc["samples"].push_back(js);
        }
        j["checks"].push_back(jc);
    }
    return j.dump(2);
}

} // namespace bolab::nf
