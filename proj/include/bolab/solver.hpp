#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bolab/field.hpp"

namespace bolab {

// Benjamin-Ono right-hand side and integrating-factor time steppers for
//   u_t + H u_xx = (u^2)_x
// handled in the twisted variable v = exp(-(t - t_n) * (-H dx^2)) u, so the
// dispersive part is exact and the only CFL restriction is the advective one.

enum class Dealias { None, TwoThirds };
enum class Scheme { IFRK4, IFMidpoint };

// T_K dx (u^2): the quadratic product is always evaluated alias-free on a 2x
// padded physical grid ("3/2-rule done exactly"); TwoThirds additionally masks
// |n| > N/3 on input and output. None is therefore the pure Fourier-Galerkin
// truncation of the nonlinearity, which conserves mean and L^2 in continuous
// time.
SpectralField nonlinearity(const SpectralField& u, Dealias dealias = Dealias::None);

// Optional time-dependent source term; evaluated inside every RK stage.
using Forcing = std::function<SpectralField(double t)>;

struct StepParams {
    double dt = 0.0;
    Scheme scheme = Scheme::IFRK4;
    Dealias dealias = Dealias::None;
};

// One step t_n -> t_n + dt (dt may be negative: the integrating factor and the
// stages are time-symmetric in form, which the reversal tests exploit).
SpectralField step(const SpectralField& u, double t, const StepParams& p,
                   const Forcing& forcing = nullptr);

struct ConservationDiag {
    double mean_initial = 0.0;
    double l2_initial = 0.0;
    double mean_drift_max = 0.0;    // max |mean(t) - mean(0)| over stored times
    double l2_drift_max = 0.0;      // max |  l2(t) -   l2(0)| / l2(0)
    bool tail_advisory = false;     // initial datum carries energy near the grid cutoff
    double tail_ratio = 0.0;        // ||P_{|n| > N/4} u0|| / ||u0||
    std::string message;
};

struct Trajectory {
    Grid grid;
    std::vector<double> times;
    std::vector<SpectralField> states;
    std::vector<double> mean_series; // Re c_0 at stored times
    std::vector<double> l2_series;   // L^2 norm at stored times
    ConservationDiag diag;
    std::string config_echo = "{}";  // JSON text echoed into the trajectory header

    double store_interval() const {
        return times.size() >= 2 ? times[1] - times[0] : 0.0;
    }
};

struct EvolveParams {
    double t_final = 1.0;
    double dt = 0.0;            // <= 0: use the advective default
    Scheme scheme = Scheme::IFRK4;
    Dealias dealias = Dealias::None;
    int store_every = 1;        // keep every k-th step (initial state always stored)
};

// Default step from the advective CFL: 0.5 * (dx) * min(1, 1/||u0||_inf).
double default_dt(const SpectralField& u0, double t_final);

// March to t_final (the step is nudged so an integer number of steps lands on
// t_final exactly), storing every store_every-th state. Throws
// InstabilityError when a state stops being finite; real input is required.
Trajectory evolve(const SpectralField& u0, const EvolveParams& p);

// Same, with a source term (manufactured-solution runs).
Trajectory evolve_with_forcing(const SpectralField& u0, const EvolveParams& p, const Forcing& f);

} // namespace bolab
