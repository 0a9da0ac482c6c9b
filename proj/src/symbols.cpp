#include "bolab/symbols.hpp"

#include <cmath>

namespace bolab {

SpectralField apply_symbol(const SymbolSpec& sigma, const SpectralField& u) {
    const Grid& g = u.grid();
    SpectralField out(g);
    const int K = g.max_mode();
    for (int n = -K; n <= K; ++n)
        out.set_mode(n, sigma.eval(n, g.freq(n)) * u.mode(n));
    return out;
}

bool symbol_is_hermitian(const SymbolSpec& sigma, const Grid& g, double tol) {
    const int K = g.max_mode();
    if (std::abs(sigma.eval(0, 0.0).imag()) > tol) return false;
    for (int n = 1; n <= K; ++n) {
        const cplx a = sigma.eval(n, g.freq(n));
        const cplx b = sigma.eval(-n, g.freq(-n));
        if (std::abs(a - std::conj(b)) > tol * std::max(1.0, std::abs(a))) return false;
    }
    return true;
}

SpectralField inverse_derivative(const SpectralField& u, double mean_tol) {
    const double m = std::abs(u.mean_coeff());
    if (m > mean_tol)
        throw PreconditionError("inverse_derivative: input has nonzero mean coefficient |c_0| = " +
                                std::to_string(m) + " (tolerance " + std::to_string(mean_tol) + ")");
    const Grid& g = u.grid();
    SpectralField out(g);
    const int K = g.max_mode();
    for (int n = -K; n <= K; ++n) {
        if (n == 0) continue; // antiderivative normalized to zero mean
        out.set_mode(n, u.mode(n) / cplx{0.0, g.freq(n)});
    }
    return out;
}

namespace symbols {

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

SymbolSpec derivative() {
    return {"derivative", [](int, double xi) { return cplx{0.0, xi}; }};
}

SymbolSpec hilbert() {
    return {"hilbert", [](int n, double) {
                if (n > 0) return cplx{0.0, -1.0};
                if (n < 0) return cplx{0.0, 1.0};
                return cplx{0.0, 0.0};
            }};
}

SymbolSpec riesz_plus() {
    return {"riesz_plus", [](int n, double) { return cplx{n >= 1 ? 1.0 : 0.0, 0.0}; }};
}

SymbolSpec riesz_minus() {
    return {"riesz_minus", [](int n, double) { return cplx{n <= -1 ? 1.0 : 0.0, 0.0}; }};
}

SymbolSpec mean_projection() {
    return {"mean_projection", [](int n, double) { return cplx{n == 0 ? 1.0 : 0.0, 0.0}; }};
}

SymbolSpec p_lo(const Grid& g) {
    if (g.mode == DomainMode::Torus)
        return {"p_lo", [](int n, double) { return cplx{std::abs(n) <= 1 ? 1.0 : 0.0, 0.0}; }};
    // Line mode: identically 1 for |xi| <= 1, falls smoothly to 0 by |xi| = 2.
    return {"p_lo", [](int, double xi) { return cplx{smoothstep(2.0 - std::abs(xi)), 0.0}; }};
}

SymbolSpec chi_plus(const Grid& g) {
    if (g.mode == DomainMode::Torus)
        return {"chi_plus", [](int n, double) { return cplx{n >= 1 ? 1.0 : 0.0, 0.0}; }};
    // Line mode: supported in xi >= 1/2, identically 1 for xi >= 1.
    return {"chi_plus", [](int, double xi) { return cplx{smoothstep(2.0 * xi - 1.0), 0.0}; }};
}

SymbolSpec lp_block(const Grid& g, double N) {
    if (!(N >= 1.0)) throw ParamError("lp_block: dyadic scale N must be >= 1");
    if (g.mode == DomainMode::Torus)
        return {"lp_block", [N](int n, double) {
                    const double a = std::abs(static_cast<double>(n));
                    return cplx{(a > N / 2.0 && a <= N) ? 1.0 : 0.0, 0.0};
                }};
    return {"lp_block", [N](int, double xi) {
                const double a = std::abs(xi);
                const double hi = smoothstep(2.0 - a / N);           // cuts above N
                const double lo = smoothstep(2.0 - 2.0 * a / N);     // region below N/2
                return cplx{hi - lo, 0.0};
            }};
}

SymbolSpec lp_le(const Grid& g, double N) {
    if (!(N >= 1.0)) throw ParamError("lp_le: scale N must be >= 1");
    if (g.mode == DomainMode::Torus)
        return {"lp_le", [N](int n, double) {
                    return cplx{std::abs(static_cast<double>(n)) <= N ? 1.0 : 0.0, 0.0};
                }};
    return {"lp_le", [N](int, double xi) { return cplx{smoothstep(2.0 - std::abs(xi) / N), 0.0}; }};
}

SymbolSpec bessel(double s) {
    return {"bessel", [s](int, double xi) { return cplx{std::pow(1.0 + std::abs(xi), s), 0.0}; }};
}

SymbolSpec riesz_pow(double s) {
    return {"riesz_pow", [s](int n, double xi) {
                if (n == 0) return cplx{0.0, 0.0};
                return cplx{std::pow(std::abs(xi), s), 0.0};
            }};
}

SymbolSpec bo_semigroup(double t) {
    return {"bo_semigroup", [t](int, double xi) { return std::polar(1.0, -xi * std::abs(xi) * t); }};
}

SymbolSpec schrodinger_semigroup(double t) {
    return {"schrodinger_semigroup", [t](int, double xi) { return std::polar(1.0, -xi * xi * t); }};
}

} // namespace symbols
} // namespace bolab
