#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bolab/errors.hpp"
#include "bolab/normalform.hpp"
#include "bolab/symbols.hpp"
#include "bolab/threads.hpp"
#include "nf_internal.hpp"

namespace bolab::nf {
namespace {

inline bool in_band(int v, int K) { return v >= -K && v <= K; }

struct EvalCtx {
    Term id{};
    double t = 0.0, M = 0.0;
    MultForm form = MultForm::Compositional;
    bool abs_m = false, zero_ph = false;
    int threads = 0;
    int K = 0;       // retained band |n| <= K
    double kap = 1.0; // frequency spacing
    DomainMode md = DomainMode::Torus;
};

inline cplx phase_factor(const EvalCtx& c, double om) {
    if (c.zero_ph || om == 0.0) return {1.0, 0.0};
    return std::polar(1.0, c.t * om);
}

// Which intermediate pair sums must stay inside the retained band. These are
// exactly the modes that exist as stored intermediates in the operator
// compositions the terms came from, so the direct sums stay equal to the
// grouped path and to compositions of the bilinear building blocks.
struct PairCons {
    bool s12 = false, s23 = false, s34 = false, s123 = false, s234 = false;
};

PairCons pair_cons(Term id) {
    switch (id) {
    case Term::N2_1: case Term::N2_10: case Term::N2_10_E:
        return {.s12 = true};
    case Term::N2_full: case Term::N2_leM: case Term::N2_2: case Term::N2_3:
    case Term::N2_20: case Term::N2_30: case Term::N2_20_E: case Term::N2_30_E:
        return {.s23 = true};
    case Term::N3_11: return {.s12 = true, .s123 = true};
    case Term::N3_12: return {.s23 = true, .s123 = true};
    case Term::N3_13: return {.s12 = true, .s34 = true};
    case Term::N3_21: case Term::N3_31: return {.s12 = true, .s34 = true};
    case Term::N3_22: case Term::N3_32: return {.s23 = true, .s234 = true};
    case Term::N3_23: case Term::N3_33: return {.s34 = true, .s234 = true};
    default:
        return {};
    }
}

SpectralField direct2(const EvalCtx& c, const Grid& g, const SpectralField& f0,
                      const SpectralField& f1) {
    SpectralField out(g);
    const int K = c.K;
    parallel_for(-K, K + 1, c.threads, [&](long long lo, long long hi) {
        for (long long nn = lo; nn < hi; ++nn) {
            const int n = static_cast<int>(nn);
            const double xi = n * c.kap;
            cplx acc{0.0, 0.0};
            for (int n1 = -K; n1 <= K; ++n1) {
                const int n2 = n - n1;
                if (!in_band(n2, K)) continue;
                cplx m = detail::kernel_eval(c.id, xi, n1 * c.kap, n2 * c.kap, 0.0, 0.0, c.M,
                                             c.form, c.md);
                if (m == cplx{0.0, 0.0}) continue;
                if (c.abs_m) m = std::abs(m);
                const double om = detail::phase_eval(c.id, xi, n1 * c.kap, n2 * c.kap, 0.0, 0.0);
                acc += m * phase_factor(c, om) * f0.mode(n1) * f1.mode(n2);
            }
            out.set_mode(n, acc);
        }
    });
    return out;
}

SpectralField direct3(const EvalCtx& c, const Grid& g, const SpectralField& f0,
                      const SpectralField& f1, const SpectralField& f2) {
    SpectralField out(g);
    const int K = c.K;
    const PairCons pc = pair_cons(c.id);
    parallel_for(-K, K + 1, c.threads, [&](long long lo, long long hi) {
        for (long long nn = lo; nn < hi; ++nn) {
            const int n = static_cast<int>(nn);
            const double xi = n * c.kap;
            cplx acc{0.0, 0.0};
            for (int n1 = -K; n1 <= K; ++n1) {
                const cplx v1 = f0.mode(n1);
                if (v1 == cplx{0.0, 0.0}) continue;
                for (int n2 = -K; n2 <= K; ++n2) {
                    const int n3 = n - n1 - n2;
                    if (!in_band(n3, K)) continue;
                    if (pc.s12 && !in_band(n1 + n2, K)) continue;
                    if (pc.s23 && !in_band(n2 + n3, K)) continue;
                    const cplx v2 = f1.mode(n2);
                    if (v2 == cplx{0.0, 0.0}) continue;
                    const cplx v3 = f2.mode(n3);
                    if (v3 == cplx{0.0, 0.0}) continue;
                    cplx m = detail::kernel_eval(c.id, xi, n1 * c.kap, n2 * c.kap, n3 * c.kap,
                                                 0.0, c.M, c.form, c.md);
                    if (m == cplx{0.0, 0.0}) continue;
                    if (c.abs_m) m = std::abs(m);
                    const double om = detail::phase_eval(c.id, xi, n1 * c.kap, n2 * c.kap,
                                                         n3 * c.kap, 0.0);
                    acc += m * phase_factor(c, om) * v1 * v2 * v3;
                }
            }
            out.set_mode(n, acc);
        }
    });
    return out;
}

SpectralField direct4(const EvalCtx& c, const Grid& g, std::span<const SpectralField> f) {
    SpectralField out(g);
    const int K = c.K;
    const PairCons pc = pair_cons(c.id);
    parallel_for(-K, K + 1, c.threads, [&](long long lo, long long hi) {
        for (long long nn = lo; nn < hi; ++nn) {
            const int n = static_cast<int>(nn);
            const double xi = n * c.kap;
            cplx acc{0.0, 0.0};
            for (int n1 = -K; n1 <= K; ++n1) {
                const cplx v1 = f[0].mode(n1);
                if (v1 == cplx{0.0, 0.0}) continue;
                for (int n2 = -K; n2 <= K; ++n2) {
                    const cplx v2 = f[1].mode(n2);
                    if (v2 == cplx{0.0, 0.0}) continue;
                    if (pc.s12 && !in_band(n1 + n2, K)) continue;
                    for (int n3 = -K; n3 <= K; ++n3) {
                        const int n4 = n - n1 - n2 - n3;
                        if (!in_band(n4, K)) continue;
                        if (pc.s23 && !in_band(n2 + n3, K)) continue;
                        if (pc.s34 && !in_band(n3 + n4, K)) continue;
                        if (pc.s123 && !in_band(n1 + n2 + n3, K)) continue;
                        if (pc.s234 && !in_band(n2 + n3 + n4, K)) continue;
                        const cplx v3 = f[2].mode(n3);
                        if (v3 == cplx{0.0, 0.0}) continue;
                        const cplx v4 = f[3].mode(n4);
                        if (v4 == cplx{0.0, 0.0}) continue;
                        cplx m = detail::kernel_eval(c.id, xi, n1 * c.kap, n2 * c.kap,
                                                     n3 * c.kap, n4 * c.kap, c.M, c.form, c.md);
                        if (m == cplx{0.0, 0.0}) continue;
                        if (c.abs_m) m = std::abs(m);
                        const double om = detail::phase_eval(c.id, xi, n1 * c.kap, n2 * c.kap,
                                                             n3 * c.kap, n4 * c.kap);
                        acc += m * phase_factor(c, om) * v1 * v2 * v3 * v4;
                    }
                }
            }
            out.set_mode(n, acc);
        }
    });
    return out;
}

// Grouped evaluation of a quadrilinear term: the split slot pair is collapsed
// into a precomputed inner field (the substituted equation's right-hand side,
// phases included), then one trilinear pass applies the stage-two boundary
// kernel. Multipliers and phases compose to exactly the same product the
// direct path evaluates tuple by tuple; only the summation order differs.
SpectralField grouped4(const EvalCtx& c, const Grid& g, std::span<const SpectralField> f) {
    const detail::TermJK jk = detail::term_jk(c.id);
    const int K = c.K;
    const double kap = c.kap;

    const SpectralField& pa = jk.k == 1 ? f[0] : (jk.k == 2 ? f[1] : f[2]);
    const SpectralField& pb = jk.k == 1 ? f[1] : (jk.k == 2 ? f[2] : f[3]);

    std::vector<cplx> inner(static_cast<size_t>(2 * K + 1), cplx{0.0, 0.0});
    parallel_for(-K, K + 1, c.threads, [&](long long lo, long long hi) {
        for (long long zz = lo; zz < hi; ++zz) {
            const int z = static_cast<int>(zz);
            const double zeta = z * kap;
            cplx acc{0.0, 0.0};
            for (int a = -K; a <= K; ++a) {
                const int b = z - a;
                if (!in_band(b, K)) continue;
                cplx m = jk.k == 1 ? detail::mu1(zeta, a * kap, b * kap, c.md)
                                   : cplx{0.0, zeta};
                if (m == cplx{0.0, 0.0}) continue;
                if (c.abs_m) m = std::abs(m);
                const double om = omega(zeta, a * kap, b * kap);
                acc += m * phase_factor(c, om) * pa.mode(a) * pb.mode(b);
            }
            inner[static_cast<size_t>(z + K)] = acc;
        }
    });

    // Outer slot sources: the inner field replaces the split pair.
    auto slot = [&](int which, int mode_n) -> cplx {
        const bool is_inner = which == jk.k;
        if (is_inner) return inner[static_cast<size_t>(mode_n + K)];
        // surviving original slots, in order: k=1 -> (f2, f3), k=2 -> (f0, f3),
        // k=3 -> (f0, f1) occupy the outer positions other than jk.k.
        int src = 0;
        if (jk.k == 1) src = which == 2 ? 2 : 3;
        else if (jk.k == 2) src = which == 1 ? 0 : 3;
        else src = which == 1 ? 0 : 1;
        return f[static_cast<size_t>(src)].mode(mode_n);
    };

    SpectralField out(g);
    parallel_for(-K, K + 1, c.threads, [&](long long lo, long long hi) {
        for (long long nn = lo; nn < hi; ++nn) {
            const int n = static_cast<int>(nn);
            const double xi = n * kap;
            cplx acc{0.0, 0.0};
            for (int z1 = -K; z1 <= K; ++z1) {
                const cplx v1 = slot(1, z1);
                if (v1 == cplx{0.0, 0.0}) continue;
                for (int z2 = -K; z2 <= K; ++z2) {
                    const int z3 = n - z1 - z2;
                    if (!in_band(z3, K)) continue;
                    // the boundary kernel's own intermediate must be retained
                    if (jk.j == 1 ? !in_band(z1 + z2, K) : !in_band(z2 + z3, K)) continue;
                    const cplx v2 = slot(2, z2);
                    if (v2 == cplx{0.0, 0.0}) continue;
                    const cplx v3 = slot(3, z3);
                    if (v3 == cplx{0.0, 0.0}) continue;
                    cplx m = detail::n2_bnd(jk.j, xi, z1 * kap, z2 * kap, z3 * kap, c.M, c.md);
                    if (m == cplx{0.0, 0.0}) continue;
                    if (c.abs_m) m = std::abs(m);
                    const double om = omega2(jk.j, xi, z1 * kap, z2 * kap, z3 * kap);
                    acc += m * phase_factor(c, om) * v1 * v2 * v3;
                }
            }
            out.set_mode(n, acc);
        }
    });
    return out;
}

} // namespace

SpectralField eval_term(Term id, std::span<const SpectralField> fields, double t, double M,
                        const EvalOptions& opts) {
    const int ar = arity(id);
    if (static_cast<int>(fields.size()) != ar)
        throw ParamError(std::string(term_name(id)) + ": expected " + std::to_string(ar) +
                         " fields, got " + std::to_string(fields.size()));
    const Grid& g = fields[0].grid();
    for (const auto& fld : fields)
        if (fld.grid() != g) throw ParamError("eval_term: fields live on different grids");
    if (!std::isfinite(t)) throw ParamError("eval_term: t must be finite");
    detail::check_M(id, M);

    EvalCtx c;
    c.id = id;
    c.t = t;
    c.M = M;
    c.form = opts.form;
    c.abs_m = opts.use_abs_multiplier;
    c.zero_ph = opts.zero_phase;
    c.threads = opts.threads;
    c.K = g.max_mode();
    c.kap = g.dk();
    c.md = g.mode;

    EvalOptions::Path path = opts.path;
    if (path == EvalOptions::Path::Auto)
        path = ar == 4 ? EvalOptions::Path::Grouped : EvalOptions::Path::Direct;
    if (path == EvalOptions::Path::Grouped && ar != 4)
        throw ParamError("eval_term: grouped path applies to quadrilinear terms only");

    if (ar == 2) return direct2(c, g, fields[0], fields[1]);
    if (ar == 3) return direct3(c, g, fields[0], fields[1], fields[2]);
    return path == EvalOptions::Path::Grouped ? grouped4(c, g, fields) : direct4(c, g, fields);
}

SpectralField boundary_term(Term id, std::span<const SpectralField> fields, double t, double M,
                            const EvalOptions& opts) {
    if (!is_boundary(id))
        throw ParamError(std::string(term_name(id)) + " is not a boundary kernel");
    return eval_term(id, fields, t, M, opts);
}

SpectralField twist_w(const SpectralField& w, double t) {
    return apply_symbol(symbols::schrodinger_semigroup(-t), w);
}

SpectralField untwist_w(const SpectralField& wt, double t) {
    return apply_symbol(symbols::schrodinger_semigroup(t), wt);
}

SpectralField twist_u(const SpectralField& u, double t) {
    return apply_symbol(symbols::bo_semigroup(-t), u);
}

SpectralField untwist_u(const SpectralField& ut, double t) {
    return apply_symbol(symbols::bo_semigroup(t), ut);
}

} // namespace bolab::nf
