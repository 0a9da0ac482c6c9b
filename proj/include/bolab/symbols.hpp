#pragma once

#include <functional>
#include <string>

#include "bolab/field.hpp"

namespace bolab {

// A Fourier multiplier. The evaluator gets both the integer mode index n and
// the physical frequency xi = n * kappa: sharp torus cutoffs decide on n
// (exact integer comparisons), scale-aware symbols use xi.
struct SymbolSpec {
    std::string name;
    std::function<cplx(int n, double xi)> eval;
};

// out(n) = sigma(n, xi_n) * u(n). Nyquist is kept at zero.
SpectralField apply_symbol(const SymbolSpec& sigma, const SpectralField& u);

// True if sigma(-xi) == conj(sigma(xi)) on every retained mode of g (the
// condition for apply_symbol to map real fields to real fields).
bool symbol_is_hermitian(const SymbolSpec& sigma, const Grid& g, double tol = 1e-14);

// d/dx^{-1}: antiderivative with zero mean; requires |mean coefficient| <= mean_tol
// and reports the offending magnitude otherwise. Exact on each mode: c_n / (i n kappa).
SpectralField inverse_derivative(const SpectralField& u, double mean_tol = 1e-13);

// The catalog. Cutoff flavour follows g.mode (sharp indicators on the torus,
// smooth bump-based cutoffs in line mode); symbols that are intrinsically
// sharp (Riesz projections, Hilbert transform) ignore the flavour.
namespace symbols {

SymbolSpec derivative();                      // i*xi
SymbolSpec hilbert();                         // -i*sgn(xi), 0 at xi = 0
SymbolSpec riesz_plus();                      // 1_{n >= 1}
SymbolSpec riesz_minus();                     // 1_{n <= -1}
SymbolSpec mean_projection();                 // 1_{n == 0}
SymbolSpec p_lo(const Grid& g);               // 1_{|n| <= 1} (torus) / smooth <=1 bump (line)
SymbolSpec chi_plus(const Grid& g);           // 1_{n >= 1} (torus) / smooth ramp up on [1/2, 1] (line)
SymbolSpec lp_block(const Grid& g, double N); // Littlewood-Paley block at dyadic N
SymbolSpec lp_le(const Grid& g, double N);    // P_{<= N}
SymbolSpec bessel(double s);                  // (1 + |xi|)^s
SymbolSpec riesz_pow(double s);               // |xi|^s, 0 at xi = 0
SymbolSpec bo_semigroup(double t);            // exp(-i xi|xi| t)
SymbolSpec schrodinger_semigroup(double t);   // exp(-i xi^2 t)

// Smooth transition 0 -> 1 on [0, 1] built from exp(-1/t); C^inf, exactly 0/1 outside.
double smoothstep(double t);

} // namespace symbols
} // namespace bolab
