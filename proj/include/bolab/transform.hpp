#pragma once

#include <span>
#include <vector>

#include "bolab/field.hpp"

namespace bolab {

// Physical <-> spectral transforms (FFTW under the hood, plans cached per size).
//
// Conventions: u(x_j) = sum_n c_n exp(i n kappa x_j) with x_j = j * period / Ns,
// so from_physical divides by the sample count and to_physical is unnormalized.
// An oversample factor os >= 1 evaluates on os*N points (synthesis pads with
// zeros; analysis keeps only the retained band |n| <= N/2, which is exactly how
// the de-aliased products below are assembled).

// Complex synthesis on os*N points.
std::vector<cplx> to_physical_complex(const SpectralField& u, int oversample = 1);

// Real synthesis; throws PreconditionError if the field is not (numerically) real.
std::vector<double> to_physical(const SpectralField& u, int oversample = 1, double reality_tol = 1e-10);

// Analysis of complex samples down to an N-mode grid; samples.size() must be a
// multiple of g.num_modes. Frequencies beyond the retained band are discarded.
SpectralField from_physical_complex(const Grid& g, std::span<const cplx> samples);
SpectralField from_physical(const Grid& g, std::span<const double> samples);

// Pointwise physical product computed alias-free on an oversampled grid and
// truncated back; oversample = 2 makes the quadratic product an exact
// convolution restricted to the retained band.
SpectralField multiply(const SpectralField& a, const SpectralField& b, int oversample = 2);

// Pointwise complex exponential exp(i * scale * f) evaluated on an oversampled
// grid (gauge transform helper). f must be real.
SpectralField complex_exp(const SpectralField& f, double scale, int oversample = 4);

} // namespace bolab
