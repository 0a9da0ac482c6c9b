#pragma once

// Internal multiplier kernels for the normal-form expansion. Everything here
// is inline and branch-light on purpose: the lattice scans evaluate these
// hundreds of millions of times. The public API in normalform.hpp wraps these
// with validation; the formulas themselves live only here.

#include <cmath>
#include <complex>

#include "bolab/normalform.hpp"
#include "bolab/symbols.hpp"

namespace bolab::nf::detail {

// Parameter policy shared by the pointwise API and the field evaluators
// (defined in nf_multiplier.cpp).
bool uses_M(Term id);
bool divides_by_phase(Term id);
void check_M(Term id, double M);

// --- cutoff building blocks ------------------------------------------------

// chi_+ : sharp 1_{x >= 1} on the torus, smooth ramp on [1/2, 1] in line mode.
inline double chi_p(double x, DomainMode md) {
    if (md == DomainMode::Torus) return x >= 1.0 ? 1.0 : 0.0;
    return symbols::smoothstep(2.0 * x - 1.0);
}

// Low-pair weight: 1_{|x| <= 1} (torus) / smooth bump dying on [1, 2] (line).
inline double plo_w(double x, DomainMode md) {
    if (md == DomainMode::Torus) return std::abs(x) <= 1.0 ? 1.0 : 0.0;
    return symbols::smoothstep(2.0 - std::abs(x));
}

// High-pair weight 1 - plo; the |xi12| > 1 factor of the far region pieces.
inline double hi_w(double x, DomainMode md) { return 1.0 - plo_w(x, md); }

inline double ind_neg(double x) { return x < 0.0 ? 1.0 : 0.0; }
inline double ind_nonneg(double x) { return x >= 0.0 ? 1.0 : 0.0; }

// |Omega| > M threshold (sharp in both modes), and the same test written for
// a half phase (the expanded formulas quote products xi*xi2 = Omega/2).
inline bool far(double om, double M) { return std::abs(om) > M; }
inline bool far_half(double half_om, double M) { return std::abs(half_om) > 0.5 * M; }

// --- bilinear kernels --------------------------------------------------------

inline double sigma_k(double xi, double x1, double x2, DomainMode md) {
    return chi_p(xi, md) * chi_p(x1, md) * ind_neg(x2);
}

// mu1 = -2i (xi xi2 / xi1) sigma. sigma vanishes unless chi_+(xi1) > 0, which
// keeps xi1 away from zero in both modes.
inline cplx mu1(double xi, double x1, double x2, DomainMode md) {
    const double sup = sigma_k(xi, x1, x2, md);
    if (sup == 0.0) return {0.0, 0.0};
    return cplx{0.0, -2.0} * (xi * x2 / x1) * sup;
}

// Gauge commutator remainder E[f, g]. Torus: -2 P_+ P_lo dx [f P_- dx g]
// (outer low-mode form); line: -2 P_+^hi dx [(P_lo f)(P_- dx g)] with
// P_+^hi = chi_+ (1 - P_lo). Multiplier of the (f, g) pair at (xi; x1, x2).
inline cplx e_mult(double xi, double x1, double x2, DomainMode md) {
    double sup;
    if (md == DomainMode::Torus) {
        sup = chi_p(xi, md) * plo_w(xi, md) * ind_neg(x2);
    } else {
        sup = chi_p(xi, md) * hi_w(xi, md) * plo_w(x1, md) * ind_neg(x2);
    }
    if (sup == 0.0) return {0.0, 0.0};
    return cplx{2.0 * xi * x2 * sup, 0.0};
}

// N1 boundary kernel mu1 / (i Omega) restricted to |Omega| > M.
inline cplx n1_bnd(double xi, double x1, double x2, double M, DomainMode md) {
    const cplx m = mu1(xi, x1, x2, md);
    if (m == cplx{0.0, 0.0}) return m;
    const double om = omega(xi, x1, x2);
    if (!far(om, M)) return {0.0, 0.0};
    return m / (cplx{0.0, 1.0} * om);
}

// --- trilinear kernels -------------------------------------------------------

// The unsplit second family ("bold" kernel): i (xi23/xi1) on the sigma-type
// support of the pair (xi, xi1, xi23), already restricted to the far first
// phase |Omega(xi, xi1, xi23)| > M.
inline cplx n2_base(double xi, double x1, double x2, double x3, double M, DomainMode md) {
    const double s23 = x2 + x3;
    const double sup = chi_p(xi, md) * chi_p(x1, md) * ind_neg(s23);
    if (sup == 0.0) return {0.0, 0.0};
    if (!far(omega(xi, x1, s23), M)) return {0.0, 0.0};
    return cplx{0.0, 1.0} * (s23 / x1) * sup;
}

// Far trilinear from the wt substitution (j = 1). The second phase indicator
// is implied by the first on the sign support (both halves of Omega2_1 are
// negative there); it is kept literal, and verify_lattice checks the
// implication.
inline cplx n2_m21(double xi, double x1, double x2, double x3, double M, DomainMode md) {
    const double s12 = x1 + x2;
    const double sup = chi_p(xi, md) * chi_p(s12, md) * chi_p(s12, md) * chi_p(x1, md) *
                       ind_neg(x2) * ind_neg(x3);
    if (sup == 0.0) return {0.0, 0.0};
    if (!far(omega(xi, s12, x3), M)) return {0.0, 0.0};
    if (!far(omega2(1, xi, x1, x2, x3), M)) return {0.0, 0.0};
    return cplx{0.0, -2.0} * (x2 / x1) * sup;
}

// Region pieces of n2_base. The far pieces carve out {|pair| > 1, |Omega2| > M}
// where "pair" is the sum whose vanishing is the resonance of the branch:
// xi12 on the (xi2<0, xi3<0) and (xi2<0, xi3>=0) branches, and its relabeled
// twin xi13 on the (xi2>=0, xi3<0) mirror branch (Omega2 = 2 xi13 xi23 there,
// so that is the pair the geometry must control; the mirror piece is exactly
// n2_3 with slots 2 and 3 swapped, which is what lets it be counted by the
// coefficient c3 = 2 instead of a fourth kernel). The near kernel n2_leM is
// the exact pointwise complement:
//   n2_base = n2_leM + n2_2 + n2_3 + n2_3 o swap23.
inline cplx n2_leM(double xi, double x1, double x2, double x3, double M, DomainMode md) {
    const cplx base = n2_base(xi, x1, x2, x3, M, md);
    if (base == cplx{0.0, 0.0}) return base;
    const double fr = far(omega2(2, xi, x1, x2, x3), M) ? 1.0 : 0.0;
    const double geom = x2 >= 0.0 ? hi_w(x1 + x3, md) : hi_w(x1 + x2, md);
    return base * (1.0 - geom * fr);
}

inline cplx n2_piece(int j, double xi, double x1, double x2, double x3, double M, DomainMode md) {
    if (j == 1) return n2_m21(xi, x1, x2, x3, M, md);
    const double signs = j == 2 ? ind_neg(x2) * ind_neg(x3) : ind_neg(x2) * ind_nonneg(x3);
    if (signs == 0.0) return {0.0, 0.0};
    const cplx base = n2_base(xi, x1, x2, x3, M, md);
    if (base == cplx{0.0, 0.0}) return base;
    if (!far(omega2(2, xi, x1, x2, x3), M)) return {0.0, 0.0};
    return base * hi_w(x1 + x2, md) * signs;
}

// Stage-two boundary kernels m2_j / (i Omega2_j).
inline cplx n2_bnd(int j, double xi, double x1, double x2, double x3, double M, DomainMode md) {
    const cplx m = n2_piece(j, xi, x1, x2, x3, M, md);
    if (m == cplx{0.0, 0.0}) return m;
    return m / (cplx{0.0, 1.0} * omega2(j, xi, x1, x2, x3));
}

// --- quadrilinear kernels ----------------------------------------------------

// Compositional route: the stage-two boundary kernel evaluated on the outer
// tuple times the kernel of the substituted equation on the inner pair.
//   k = 1 : -2 (m2_j / Omega2_j)(xi, x12, x3, x4) (x12 x2 / x1)
//              chi_+(x12) chi_+(x1) 1_{x2<0}
//   k = 2 :    (m2_j / Omega2_j)(xi, x1, x23, x4) x23
//   k = 3 :    (m2_j / Omega2_j)(xi, x1, x2, x34) x34
inline cplx n3_comp(int j, int k, double xi, double x1, double x2, double x3, double x4,
                    double M, DomainMode md) {
    double z1, z2, z3; // outer tuple slots
    if (k == 1) {
        z1 = x1 + x2; z2 = x3; z3 = x4;
    } else if (k == 2) {
        z1 = x1; z2 = x2 + x3; z3 = x4;
    } else {
        z1 = x1; z2 = x2; z3 = x3 + x4;
    }
    const cplx m2 = n2_piece(j, xi, z1, z2, z3, M, md);
    if (m2 == cplx{0.0, 0.0}) return m2;
    const double om2 = omega2(j, xi, z1, z2, z3); // nonzero: m2 carries |Omega2| > M
    if (k == 1) {
        const double sup = chi_p(z1, md) * chi_p(x1, md) * ind_neg(x2);
        if (sup == 0.0) return {0.0, 0.0};
        return -2.0 * (m2 / om2) * (z1 * x2 / x1) * sup;
    }
    return (m2 / om2) * (k == 2 ? z2 : z3);
}

// Expanded route: the nine cases written out with simplified denominators.
// Algebraically equal to n3_comp tuple by tuple; kept textually independent
// so the two routes actually cross-check each other.
inline cplx n3_exp(int j, int k, double xi, double x1, double x2, double x3, double x4,
                   double M, DomainMode md) {
    const double s12 = x1 + x2, s23 = x2 + x3, s34 = x3 + x4;
    const double s123 = s12 + x3, s234 = s23 + x4;
    const cplx I{0.0, 1.0};
    switch (j * 10 + k) {
    case 11: { // -2(m21/Omega21)(s12 x2/x1) chi(s12)chi(x1)1_{x2<0}, expanded
        const double sup = chi_p(xi, md) * chi_p(s12, md) * chi_p(s12, md) * chi_p(s123, md) *
                           chi_p(s123, md) * chi_p(x1, md) * ind_neg(x2) * ind_neg(x3) *
                           ind_neg(x4);
        if (sup == 0.0) return {0.0, 0.0};
        const double den = xi * x4 + s123 * x3;
        if (!far_half(xi * x4, M) || !far_half(den, M)) return {0.0, 0.0};
        return 2.0 * I * (x3 * x2 / (x1 * den)) * sup;
    }
    case 12: {
        const double sup = chi_p(xi, md) * chi_p(x1, md) * chi_p(s123, md) * chi_p(s123, md) *
                           ind_neg(s23) * ind_neg(x4);
        if (sup == 0.0) return {0.0, 0.0};
        const double den = xi * x4 + s123 * s23;
        if (!far_half(xi * x4, M) || !far_half(den, M)) return {0.0, 0.0};
        return -I * (s23 * s23 / (x1 * den)) * sup;
    }
    case 13: {
        const double sup = chi_p(xi, md) * chi_p(x1, md) * chi_p(s12, md) * chi_p(s12, md) *
                           ind_neg(x2) * ind_neg(s34);
        if (sup == 0.0) return {0.0, 0.0};
        const double den = xi * s34 + s12 * x2;
        if (!far_half(xi * s34, M) || !far_half(den, M)) return {0.0, 0.0};
        return -I * (x2 * s34 / (x1 * den)) * sup;
    }
    case 21: {
        const double sup = chi_p(xi, md) * chi_p(s12, md) * chi_p(s12, md) * chi_p(x1, md) *
                           ind_neg(x2) * ind_neg(x3) * ind_neg(x4) * ind_neg(s34) *
                           hi_w(s123, md);
        if (sup == 0.0) return {0.0, 0.0};
        const double den = xi * s34 - x3 * x4;
        if (!far_half(xi * s34, M) || !far_half(den, M)) return {0.0, 0.0};
        return -I * (x2 * s34 / (x1 * den)) * sup;
    }
    case 22: {
        const double sup = chi_p(xi, md) * chi_p(x1, md) * ind_neg(s23) * ind_neg(x4) *
                           ind_neg(s234) * hi_w(s123, md);
        if (sup == 0.0) return {0.0, 0.0};
        const double den = xi * s234 - s23 * x4;
        if (!far_half(xi * s234, M) || !far_half(den, M)) return {0.0, 0.0};
        return 0.5 * I * (s23 * s234 / (x1 * den)) * sup;
    }
    case 23: {
        const double sup = chi_p(xi, md) * chi_p(x1, md) * ind_neg(x2) * ind_neg(s34) *
                           ind_neg(s234) * hi_w(s12, md);
        if (sup == 0.0) return {0.0, 0.0};
        const double den = xi * s234 - x2 * s34;
        if (!far_half(xi * s234, M) || !far_half(den, M)) return {0.0, 0.0};
        return 0.5 * I * (s234 * s34 / (x1 * den)) * sup;
    }
    case 31: {
        const double sup = chi_p(xi, md) * chi_p(s12, md) * chi_p(s12, md) * chi_p(x1, md) *
                           ind_neg(x2) * ind_neg(x3) * ind_nonneg(x4) * ind_neg(s34) *
                           hi_w(s123, md);
        if (sup == 0.0) return {0.0, 0.0};
        if (!far_half(xi * s34, M) || !far_half(s123 * s34, M)) return {0.0, 0.0};
        return -I * (x2 / (x1 * s123)) * sup;
    }
    case 32: {
        const double sup = chi_p(xi, md) * chi_p(x1, md) * ind_neg(s23) * ind_nonneg(x4) *
                           ind_neg(s234) * hi_w(s123, md);
        if (sup == 0.0) return {0.0, 0.0};
        if (!far_half(xi * s234, M) || !far_half(s123 * s234, M)) return {0.0, 0.0};
        return 0.5 * I * (s23 / (x1 * s123)) * sup;
    }
    case 33: {
        const double sup = chi_p(xi, md) * chi_p(x1, md) * ind_neg(x2) * ind_nonneg(s34) *
                           ind_neg(s234) * hi_w(s12, md);
        if (sup == 0.0) return {0.0, 0.0};
        if (!far_half(xi * s234, M) || !far_half(s12 * s234, M)) return {0.0, 0.0};
        return 0.5 * I * (s34 / (x1 * s12)) * sup;
    }
    default:
        return {0.0, 0.0};
    }
}

// --- dispatch ---------------------------------------------------------------

struct TermJK { int j = 0, k = 0; };
inline TermJK term_jk(Term id) {
    switch (id) {
    case Term::N2_1: case Term::N2_10: case Term::N2_10_E: return {1, 0};
    case Term::N2_2: case Term::N2_20: case Term::N2_20_E: return {2, 0};
    case Term::N2_3: case Term::N2_30: case Term::N2_30_E: return {3, 0};
    case Term::N3_11: return {1, 1}; case Term::N3_12: return {1, 2}; case Term::N3_13: return {1, 3};
    case Term::N3_21: return {2, 1}; case Term::N3_22: return {2, 2}; case Term::N3_23: return {2, 3};
    case Term::N3_31: return {3, 1}; case Term::N3_32: return {3, 2}; case Term::N3_33: return {3, 3};
    default: return {0, 0};
    }
}

inline cplx kernel_eval(Term id, double xi, double x1, double x2, double x3, double x4,
                        double M, MultForm form, DomainMode md) {
    switch (id) {
    case Term::N1:
        return mu1(xi, x1, x2, md);
    case Term::N1_leM: {
        const cplx m = mu1(xi, x1, x2, md);
        return (m != cplx{0.0, 0.0} && !far(omega(xi, x1, x2), M)) ? m : cplx{0.0, 0.0};
    }
    case Term::N1_gtM: {
        const cplx m = mu1(xi, x1, x2, md);
        return (m != cplx{0.0, 0.0} && far(omega(xi, x1, x2), M)) ? m : cplx{0.0, 0.0};
    }
    case Term::N1_0:
    case Term::N1_0_E:
        return n1_bnd(xi, x1, x2, M, md);
    case Term::E:
        return e_mult(xi, x1, x2, md);
    case Term::N2_full:
        return n2_base(xi, x1, x2, x3, M, md);
    case Term::N2_leM:
        return n2_leM(xi, x1, x2, x3, M, md);
    case Term::N2_1: case Term::N2_2: case Term::N2_3:
        return n2_piece(term_jk(id).j, xi, x1, x2, x3, M, md);
    case Term::N2_10: case Term::N2_20: case Term::N2_30:
    case Term::N2_10_E: case Term::N2_20_E: case Term::N2_30_E:
        return n2_bnd(term_jk(id).j, xi, x1, x2, x3, M, md);
    default: { // N3_jk
        const TermJK jk = term_jk(id);
        return form == MultForm::Compositional ? n3_comp(jk.j, jk.k, xi, x1, x2, x3, x4, M, md)
                                               : n3_exp(jk.j, jk.k, xi, x1, x2, x3, x4, M, md);
    }
    }
}

inline double phase_eval(Term id, double xi, double x1, double x2, double x3, double x4) {
    switch (id) {
    case Term::N1: case Term::N1_leM: case Term::N1_gtM: case Term::N1_0: case Term::N1_0_E:
        return omega(xi, x1, x2);
    case Term::E:
        return 0.0;
    case Term::N2_full: case Term::N2_leM:
        return omega2(2, xi, x1, x2, x3);
    case Term::N2_1: case Term::N2_2: case Term::N2_3:
    case Term::N2_10: case Term::N2_20: case Term::N2_30:
    case Term::N2_10_E: case Term::N2_20_E: case Term::N2_30_E:
        return omega2(term_jk(id).j, xi, x1, x2, x3);
    default: {
        const TermJK jk = term_jk(id);
        return omega3(jk.j, jk.k, xi, x1, x2, x3, x4);
    }
    }
}

} // namespace bolab::nf::detail
