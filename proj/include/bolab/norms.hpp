#pragma once

#include "bolab/field.hpp"

namespace bolab {

// H^s norm with Japanese-bracket weight (1 + |xi|)^{2s}:
//   ||u||_{H^s}^2 = period * sum_n (1 + |n*kappa|)^{2s} |c_n|^2
// (Plancherel with the continuous L^2(0, period) pairing, so ||u||_{H^0} = ||u||_{L^2}.)
double sobolev_norm(const SpectralField& u, double s);

// L^p norm by the rectangle rule on an oversampled physical grid (default 4x).
// p may be +infinity (sup norm). Throws ParamError for p < 1. Works for complex
// fields (uses |u(x)|).
double lebesgue_norm(const SpectralField& u, double p, int oversample = 4);

} // namespace bolab
