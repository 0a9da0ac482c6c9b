#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bolab/trajectory.hpp"

namespace bolab::nf {

// Two-stage normal form for the gauged equation, in the twisted variables
//   wt(n, t) = e^{+i n^2 t} w(n, t),   ut(n, t) = e^{+i n|n| t} u(n, t).
// The driving equations on the Fourier side (convolution constraint
// xi = xi1 + xi2 implied, no 2*pi factors in this convention) are
//   d/dt ut(xi) = i xi sum e^{i t Omega} ut(xi1) ut(xi2),
//   d/dt wt(xi) = sum e^{i t Omega} mu1 wt(xi1) ut(xi2) + i mu wt(xi),
// with mu1 = -2i (xi xi2 / xi1) sigma, sigma = chi_+(xi) chi_+(xi1) 1_{xi2<0},
// mu = P_0(u^2), and Omega(a, b, c) = a|a| - b|b| - c|c|. On the torus the
// positive-part cutoff chi_+ = 1_{n >= 1} makes the commutator remainder E
// of the gauge derivation vanish identically (it is absorbed into the n = 1
// mode of the bilinear term); the *_E term ids below keep the slots of the
// general identity available, and evaluate to zero in torus runs.
//
// Stage one splits the bilinear term at |Omega| = M and integrates the far
// part by parts in time; stage two does the same to the resulting trilinear
// terms. Everything here works with the explicit multipliers of that
// expansion; verify_lattice checks the whole algebra on the integer lattice.

// ---------------------------------------------------------------------------
// Resonance phases (exact in integer arithmetic, mirrored for doubles).
// ---------------------------------------------------------------------------

// Omega(xi, xi1, xi2) = omega(xi) - omega(xi1) - omega(xi2), omega(x) = x|x|.
long long omega(long long xi, long long xi1, long long xi2);
double omega(double xi, double xi1, double xi2);

// Second-stage phases. j = 1 splits the first slot of the trilinear term
// (the one produced by substituting the wt equation), j = 2 and j = 3 both
// come from substituting the ut equation into the second slot, so their
// composition is the same function; they differ only in the sign region of
// the multiplier they ride with.
//   Omega2(1) = Omega(xi, xi1+xi2, xi3) + Omega(xi1+xi2, xi1, xi2)
//   Omega2(2) = Omega2(3) = Omega(xi, xi1, xi2+xi3) + Omega(xi2+xi3, xi2, xi3)
// Both telescope to omega(xi) - omega(xi1) - omega(xi2) - omega(xi3).
long long omega2(int j, long long xi, long long xi1, long long xi2, long long xi3);
double omega2(int j, double xi, double xi1, double xi2, double xi3);

// Third-stage phases: slot k in {1, 2, 3} of the trilinear term is split.
//   Omega3(j, 1) = Omega2(j; xi, xi1+xi2, xi3, xi4) + Omega(xi1+xi2, xi1, xi2)
//   Omega3(j, 2) = Omega2(j; xi, xi1, xi2+xi3, xi4) + Omega(xi2+xi3, xi2, xi3)
//   Omega3(j, 3) = Omega2(j; xi, xi1, xi2, xi3+xi4) + Omega(xi3+xi4, xi3, xi4)
// All telescope to omega(xi) - sum_i omega(xi_i).
long long omega3(int j, int k, long long xi, long long xi1, long long xi2, long long xi3,
                 long long xi4);
double omega3(int j, int k, double xi, double xi1, double xi2, double xi3, double xi4);

// sigma(xi, xi1, xi2) = chi_+(xi) chi_+(xi1) 1_{xi2 < 0}; sharp indicators on
// the torus, smooth chi_+ ramp in line mode (the 1_{xi2<0} stays sharp).
double sigma(double xi, double xi1, double xi2, DomainMode mode = DomainMode::Torus);

// ---------------------------------------------------------------------------
// Term ids for the normal-form expansion.
// ---------------------------------------------------------------------------

// Naming: N1_* are bilinear (wt, ut), N2_* trilinear (wt, ut, ut), N3_jk
// quadrilinear (wt, ut, ut, ut). The suffix 0 marks a time-boundary kernel
// (the multiplier is divided by i * phase). N2_full is the unsplit second
// trilinear family (before the near/far region partition) and exists for
// partition tests; it never enters the integrated identity directly.
enum class Term {
    N1,      // unsplit bilinear; M is ignored
    N1_leM,  // bilinear restricted to |Omega| <= M
    N1_gtM,  // bilinear restricted to |Omega| >  M
    N1_0,    // boundary kernel mu1 / (i Omega) 1_{|Omega| > M}
    N2_full, // i (xi23/xi1) 1_{|Omega(xi,xi1,xi23)|>M} chi_+(xi) chi_+(xi1) 1_{xi23<0}
    N2_leM,  // N2_full restricted to {|xi12| <= 1} or {|Omega2| <= M}
    N2_1,    // far trilinear from the wt substitution (support xi2<0, xi3<0)
    N2_2,    // far piece of N2_full with xi2 < 0, xi3 < 0
    N2_3,    // far piece of N2_full with xi2 < 0, xi3 >= 0 (mirror counts twice)
    N2_10,   // boundary kernel m2_1 / (i Omega2_1)
    N2_20,   // boundary kernel m2_2 / (i Omega2_2)
    N2_30,   // boundary kernel m2_3 / (i Omega2_3)
    N3_11, N3_12, N3_13, // continuation quadrilinears of N2_1 (slot k split)
    N3_21, N3_22, N3_23, // continuation quadrilinears of N2_2
    N3_31, N3_32, N3_33, // continuation quadrilinears of N2_3
    E,       // gauge commutator remainder E[f, g] (no phase, M ignored)
    N1_0_E,  // same kernel as N1_0, slot 1 carries the twisted remainder Et
    N2_10_E, // same kernel as N2_10, slot 1 carries Et
    N2_20_E, // ...
    N2_30_E,
};

int arity(Term id);                 // number of field slots (2, 3 or 4)
const char* term_name(Term id);     // stable name used in reports
bool is_boundary(Term id);          // divided by i * phase (requires M >= 1)

// The quadrilinear multipliers exist in two algebraically equal forms: the
// compositional one (boundary kernel of stage two times the substituted
// kernel, evaluated by actually composing those factors) and the expanded
// one (simplified closed formula per case). Keeping both routes separate is
// the point: verify_lattice and the unit tests check them against each other.
enum class MultForm { Compositional, Expanded };

// The pure multiplier of a term at the frequency tuple freqs = (xi, xi1, ...,
// xi_arity); the oscillatory factor e^{i t phase} is *not* included (see
// phase_value). Returns exactly zero off the support and never divides by a
// vanishing denominator. Terms whose definition divides by a phase require
// M >= 1 (ParamError otherwise); M < 0 is rejected for every term that uses
// it. The tuple is taken at face value (raw evaluation), including tuples
// that violate the convolution constraint.
cplx multiplier_value(Term id, std::span<const double> freqs, double M,
                      MultForm form = MultForm::Compositional,
                      DomainMode mode = DomainMode::Torus);

// The phase carried by the term's oscillatory factor at this tuple (Omega,
// Omega2_j or Omega3_jk; zero for Term::E).
double phase_value(Term id, std::span<const double> freqs);

// ---------------------------------------------------------------------------
// Term evaluation on spectral fields.
// ---------------------------------------------------------------------------

struct EvalOptions {
    enum class Path {
        Auto,    // grouped for quadrilinear terms, direct otherwise
        Direct,  // literal lattice sum over all slot tuples
        Grouped, // inner-pair precompute (quadrilinear terms only)
    };
    Path path = Path::Auto;
    MultForm form = MultForm::Compositional;
    bool use_abs_multiplier = false; // |multiplier| instead of the multiplier
    bool zero_phase = false;         // drop e^{i t phase} (majorant evaluations)
    int threads = 0;                 // 0: BOLAB_THREADS / hardware
};

// Evaluate one term of the expansion on twisted fields at time t. The number
// of fields must match arity(id) and all fields must share a grid. Both
// evaluation paths restrict intermediate pair sums to the retained band, so
// they agree with each other and with the operator compositions that produced
// the term; the direct path applies those constraints explicitly, the grouped
// path inherits them from its precomputed inner field.
SpectralField eval_term(Term id, std::span<const SpectralField> fields, double t, double M,
                        const EvalOptions& opts = {});

// The time-boundary bracket kernels (N1_0, N2_j0 and their *_E aliases).
// Identical to eval_term; non-boundary ids are rejected.
SpectralField boundary_term(Term id, std::span<const SpectralField> fields, double t, double M,
                            const EvalOptions& opts = {});

// Twists. twist_w multiplies mode n by e^{+i n^2 t} (Schrodinger semigroup at
// -t), twist_u by e^{+i n|n| t}; the untwists invert exactly.
SpectralField twist_w(const SpectralField& w, double t);
SpectralField untwist_w(const SpectralField& wt, double t);
SpectralField twist_u(const SpectralField& u, double t);
SpectralField untwist_u(const SpectralField& ut, double t);

// ---------------------------------------------------------------------------
// Exhaustive lattice verification of the multiplier algebra.
// ---------------------------------------------------------------------------

struct LatticeParams {
    int pair_range = 256;     // |xi_i| range for bilinear / two-frequency scans
    int additivity_range = 64; // range for the phase additivity scan (4-tuples)
    int quad_range = 32;      // range for quadrilinear multiplier scans
    double M = 4.0;
    int threads = 0;
};

struct LatticeViolation {
    std::array<long long, 5> tuple{}; // xi, xi1, ..., unused slots zero
    std::string detail;
};

struct LatticeCheck {
    std::string name;
    int range = 0;
    unsigned long long scanned = 0;        // tuples examined
    unsigned long long support_points = 0; // tuples where the claim applied
    unsigned long long violations = 0;
    std::vector<LatticeViolation> samples; // at most 32 kept per check
};

struct LatticeReport {
    LatticeParams params;
    std::vector<LatticeCheck> checks;
    std::map<std::string, double> constants; // empirical bound-template constants
    bool pass = false;
    std::string to_json() const;
};

// Scans the integer lattice: (a) indicator ranges, (b) the phase
// factorization Omega = 2 xi xi2 < 0 on supp sigma, (c) additivity of the
// composed phases, (d) support inequalities and sign templates, (e) the
// three-branch closed forms of the second-stage phases, (f) the partition of
// the unsplit trilinear family, the compositional-vs-expanded equality of the
// nine quadrilinear multipliers, and the bound-template constants (the
// |m2_1| <= C |xi2|/xi1 constant is pinned to C = 2). pass means zero
// violations across every check.
LatticeReport verify_lattice(const LatticeParams& params = {});

// ---------------------------------------------------------------------------
// Integrated identity residual on a stored trajectory.
// ---------------------------------------------------------------------------

struct NfTermMagnitude {
    std::string name; // "int:<term>" for integrand pieces, "bnd:<term>" for brackets
    double value = 0.0;
};

struct NfResidualReport {
    double t0 = 0.0, t1 = 0.0;
    int samples = 0;
    double M = 0.0, s = 0.0, delta = 0.0;
    double lhs_norm = 0.0;           // ||wt(T) - wt(0)||_{H^s}
    double abs_residual = 0.0;       // ||LHS - RHS||_{H^s}
    double rel_residual = 0.0;       // abs / lhs (0 when both vanish)
    double abs_residual_sdelta = 0.0; // same defect in H^{s+delta}
    double mu_mean = 0.0;            // average of mu = P_0(u^2) over samples
    double mu_drift = 0.0;           // max |mu(t) - mu(0)| (conserved quantity)
    std::vector<NfTermMagnitude> terms;
    std::string to_json() const;
};

// Measures the integrated two-stage identity
//   wt(T) - wt(0) =
//     int_0^T [ N1_leM(wt,ut) + N2_leM(wt,ut,ut)
//               + i mu (wt - N1_0(wt,ut) - sum_j c_j N2_j0(wt,ut,ut))
//               - sum_j c_j sum_k N3_jk(wt,ut,ut,ut)
//               + Et - N1_0(Et,ut) - sum_j c_j N2_j0(Et,ut,ut) ] dt
//     + [ N1_0(wt,ut) + sum_j c_j N2_j0(wt,ut,ut) ]_0^T
// with c = (1, 1, 2) (the mirror region of the third far piece counts twice)
// and Et = 0 on the torus. Gauge fields are derived from the stored u states,
// the time integral uses composite Simpson (3/8 block on an odd tail), and
// the defect is reported in H^s and H^{s+delta}. Requires a real, zero-mean,
// uniformly stored trajectory on the 2*pi torus with at least five samples
// and M >= 1.
NfResidualReport normalform_residual(const Trajectory& traj, double M, double s,
                                     double delta = 0.0, int threads = 0);

} // namespace bolab::nf
