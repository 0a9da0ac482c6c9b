#pragma once

#include <vector>

#include "bolab/solver.hpp"

namespace bolab {

// Gauge transform machinery (Tao's e^{-iF} trick adapted to the periodic
// setting): F is the zero-mean antiderivative of u, W = P_+ e^{-iF},
// w = dx W. On the torus w solves
//   w_t = i w_xx - 2 P_+ dx [ dx^{-1} w * P_- dx u ] + i mu w,
//   mu = P_0(u^2) = (1/period) int u^2
// (the mu phase is invisible on the line, where no constant sits in L^2, but
// with a zero-mean F convention it is very much present on the torus: the
// antiderivative equation F_t + H F_xx = u^2 - P_0(u^2) subtracts the mean,
// and that subtraction resurfaces as a modulation of w). gauge_residual
// measures exactly this equation; dropping the mu term leaves an O(mu ||w||)
// floor that refinement studies expose immediately.

// Galilean/mean reduction u -> v: subtract the mean c0 and ride along at the
// induced translation speed. v(t, x) = u(t, x - velocity*t) - c0 solves the
// same equation with zero mean; velocity = 2*c0 for u_t + H u_xx = (u^2)_x.
struct MeanReduction {
    double mean = 0.0;     // c0 = (1/period) int u0
    double velocity = 0.0; // 2*c0
    SpectralField v0;      // u0 - c0
};
MeanReduction reduce_mean(const SpectralField& u0);

// Inverse of the reduction at time t: u_n(t) = v_n(t) e^{i n velocity t} (n != 0),
// u_0 = mean.
SpectralField unreduce_mean(const SpectralField& v, const MeanReduction& red, double t);

struct GaugeState {
    SpectralField F;       // dx^{-1} u, zero mean
    SpectralField exp_miF; // e^{-iF}, truncated to the band
    SpectralField W;       // P_+ e^{-iF}
    SpectralField w;       // dx W
    double tail_ratio = 0.0; // relative mass of e^{-iF} beyond |n| = N/4
};

// Requires real, zero-mean u. The exponential is formed pointwise on an
// oversampled physical grid (default 4x) and truncated back.
GaugeState gauge_forward(const SpectralField& u, int oversample = 4);

// u = i e^{iF} ( w + dx P_- e^{-iF} ): exact inversion up to the spectral
// truncation of the exponentials. Returns the raw (complex) result so the
// round-trip error can be measured honestly.
SpectralField reconstruct_u(const SpectralField& w, const SpectralField& F, int oversample = 4);

// The negligible commutator term E[f, g]. Torus mode uses the outer low-mode
// form -2 P_+ P_lo dx [ f * P_- dx g ] (supported only at mode +1); line mode
// uses the inner form -2 P_+^hi dx [ (P_lo f) * (P_- dx g) ] with smooth
// cutoffs, where P_+^hi = chi_+ * (1 - P_lo).
SpectralField negligible_term(const SpectralField& f, const SpectralField& g);

// For each interior stored time of a (uniformly stored) trajectory of u:
// L^2 norm of
//   (w_{i+1} - w_{i-1})/(2h) - i dx^2 w_i
//     + 2 P_+ dx [ dx^{-1} w_i * P_- dx u_i ] - i mu_i w_i.
// Centered differencing makes this second order in the store interval h.
std::vector<double> gauge_residual(const Trajectory& traj);

// mu = P_0(u^2): the zeroth Fourier coefficient of u^2, computed exactly on
// the lattice (= sum of |u_n|^2 for real u). Conserved by the Galerkin flow.
double mean_of_square(const SpectralField& u);

} // namespace bolab
