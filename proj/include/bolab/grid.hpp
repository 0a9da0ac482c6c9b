#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "bolab/errors.hpp"

namespace bolab {

// Cutoff flavour. Torus mode (the default, period 2*pi) uses sharp indicator
// symbols on integer mode indices; line mode (large period) uses the smooth
// Littlewood-Paley style cutoffs built from a C^inf bump.
enum class DomainMode { Torus, Line };

// Uniform periodic grid. num_modes is the number of retained Fourier modes N
// (even, >= 8); the mode indices run over n = -N/2 .. N/2-1 and the Nyquist
// mode n = -N/2 is kept identically zero by every operator in this library.
struct Grid {
    int num_modes = 0;
    double period = 2.0 * std::numbers::pi;
    DomainMode mode = DomainMode::Torus;

    Grid() = default;
    Grid(int n, double p = 2.0 * std::numbers::pi, DomainMode m = DomainMode::Torus)
        : num_modes(n), period(p), mode(m) {
        if (n < 8 || n % 2 != 0)
            throw ParamError("Grid: num_modes must be even and >= 8, got " + std::to_string(n));
        if (!(p > 0.0) || !std::isfinite(p))
            throw ParamError("Grid: period must be positive and finite");
    }

    // Frequency spacing kappa = 2*pi / period; physical frequency of mode n is n*kappa.
    double dk() const { return 2.0 * std::numbers::pi / period; }
    double freq(int n) const { return static_cast<double>(n) * dk(); }

    // Largest retained symmetric index: modes with |n| <= max_mode() are usable.
    int max_mode() const { return num_modes / 2 - 1; }

    bool is_torus_2pi() const {
        return mode == DomainMode::Torus && std::abs(period - 2.0 * std::numbers::pi) < 1e-12;
    }

    bool operator==(const Grid& o) const {
        return num_modes == o.num_modes && period == o.period && mode == o.mode;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

} // namespace bolab
