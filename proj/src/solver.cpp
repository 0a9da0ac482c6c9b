#include "bolab/solver.hpp"

#include <cmath>

#include "bolab/norms.hpp"
#include "bolab/symbols.hpp"
#include "bolab/transform.hpp"

namespace bolab {
namespace {

SpectralField mask_two_thirds(const SpectralField& u) {
    const Grid& g = u.grid();
    const int cut = g.num_modes / 3;
    SpectralField out(g);
    for (int n = -cut; n <= cut; ++n) out.set_mode(n, u.mode(n));
    return out;
}

// exp(tau L) for the linear part L = -H dx^2, i.e. multiplication by exp(-i xi|xi| tau).
SpectralField semigroup(const SpectralField& u, double tau) {
    return apply_symbol(symbols::bo_semigroup(tau), u);
}

} // namespace

SpectralField nonlinearity(const SpectralField& u, Dealias dealias) {
    const SpectralField& v = (dealias == Dealias::TwoThirds) ? mask_two_thirds(u) : u;
    SpectralField sq = multiply(v, v); // alias-free on the 2x grid
    SpectralField out = apply_symbol(symbols::derivative(), sq);
    if (dealias == Dealias::TwoThirds) out = mask_two_thirds(out);
    out.zero_nyquist();
    return out;
}

SpectralField step(const SpectralField& u, double t, const StepParams& p, const Forcing& forcing) {
    const double h = p.dt;
    if (h == 0.0 || !std::isfinite(h)) throw ParamError("step: dt must be nonzero and finite");

    // Twisted right-hand side: G(tau, y) = S(-tau) [ N(S(tau) y) + f(t + tau) ],
    // where y is the twisted state relative to time t and S is the BO semigroup.
    auto G = [&](double tau, const SpectralField& y) {
        SpectralField phys = (tau == 0.0) ? y : semigroup(y, tau);
        SpectralField rhs = nonlinearity(phys, p.dealias);
        if (forcing) rhs += forcing(t + tau);
        return (tau == 0.0) ? rhs : semigroup(rhs, -tau);
    };

    const SpectralField& y0 = u;
    switch (p.scheme) {
        case Scheme::IFRK4: {
            SpectralField k1 = G(0.0, y0);
            SpectralField k2 = G(h / 2, y0 + cplx{h / 2, 0.0} * k1);
            SpectralField k3 = G(h / 2, y0 + cplx{h / 2, 0.0} * k2);
            SpectralField k4 = G(h, y0 + cplx{h, 0.0} * k3);
            SpectralField y = y0 + cplx{h / 6.0, 0.0} * (k1 + cplx{2, 0} * k2 + cplx{2, 0} * k3 + k4);
            return semigroup(y, h);
        }
        case Scheme::IFMidpoint: {
            SpectralField k1 = G(0.0, y0);
            SpectralField k2 = G(h / 2, y0 + cplx{h / 2, 0.0} * k1);
            SpectralField y = y0 + cplx{h, 0.0} * k2;
            return semigroup(y, h);
        }
    }
    throw ParamError("step: unknown scheme");
}

double default_dt(const SpectralField& u0, double t_final) {
    const Grid& g = u0.grid();
    const double dx = g.period / static_cast<double>(g.num_modes);
    const double amp = lebesgue_norm(u0, std::numeric_limits<double>::infinity());
    double dt = 0.5 * dx * std::min(1.0, amp > 0.0 ? 1.0 / amp : 1.0);
    return std::min(dt, t_final);
}

namespace {

Trajectory run_evolve(const SpectralField& u0, const EvolveParams& p, const Forcing& forcing) {
    if (!(p.t_final > 0.0) || !std::isfinite(p.t_final))
        throw ParamError("evolve: t_final must be positive and finite");
    if (p.store_every < 1) throw ParamError("evolve: store_every must be >= 1");
    if (!u0.is_real(1e-10))
        throw PreconditionError("evolve: initial datum is not real (defect " +
                                std::to_string(u0.reality_defect()) + ")");

    double dt = p.dt > 0.0 ? p.dt : default_dt(u0, p.t_final);
    auto nsteps = static_cast<long long>(std::ceil(p.t_final / dt - 1e-9));
    if (nsteps < 1) nsteps = 1;
    dt = p.t_final / static_cast<double>(nsteps); // land on t_final exactly

    Trajectory traj;
    traj.grid = u0.grid();

    // Tail advisory: energy near the cutoff at t = 0 means the truncation is
    // under-resolved and every later diagnostic is suspect. Flag, don't throw.
    {
        const Grid& g = u0.grid();
        double tail = 0.0, total = 0.0;
        for (int n = -g.max_mode(); n <= g.max_mode(); ++n) {
            const double e = std::norm(u0.mode(n));
            total += e;
            if (std::abs(n) > g.num_modes / 4) tail += e;
        }
        traj.diag.tail_ratio = total > 0.0 ? std::sqrt(tail / total) : 0.0;
        if (traj.diag.tail_ratio > 1e-8) {
            traj.diag.tail_advisory = true;
            traj.diag.message = "initial datum has relative spectral tail " +
                                std::to_string(traj.diag.tail_ratio) + " beyond |n| = N/4";
        }
    }

    traj.diag.mean_initial = u0.mean_coeff().real();
    traj.diag.l2_initial = sobolev_norm(u0, 0.0);

    auto record = [&](double t, const SpectralField& u) {
        traj.times.push_back(t);
        traj.states.push_back(u);
        const double mean = u.mean_coeff().real();
        const double l2 = sobolev_norm(u, 0.0);
        traj.mean_series.push_back(mean);
        traj.l2_series.push_back(l2);
        traj.diag.mean_drift_max =
            std::max(traj.diag.mean_drift_max, std::abs(mean - traj.diag.mean_initial));
        if (traj.diag.l2_initial > 0.0)
            traj.diag.l2_drift_max = std::max(
                traj.diag.l2_drift_max, std::abs(l2 - traj.diag.l2_initial) / traj.diag.l2_initial);
    };

    StepParams sp{dt, p.scheme, p.dealias};
    SpectralField u = u0;
    record(0.0, u);
    for (long long i = 0; i < nsteps; ++i) {
        const double t = static_cast<double>(i) * dt;
        u = step(u, t, sp, forcing);
        if (!u.all_finite())
            throw InstabilityError("evolve: state became non-finite at step " + std::to_string(i + 1) +
                                   ", t = " + std::to_string(t + dt) +
                                   " (dt = " + std::to_string(dt) + "; reduce dt or the amplitude)");
        if ((i + 1) % p.store_every == 0 || i + 1 == nsteps)
            record(static_cast<double>(i + 1) * dt, u);
    }
    return traj;
}

} // namespace

Trajectory evolve(const SpectralField& u0, const EvolveParams& p) { return run_evolve(u0, p, nullptr); }

Trajectory evolve_with_forcing(const SpectralField& u0, const EvolveParams& p, const Forcing& f) {
    return run_evolve(u0, p, f);
}

} // namespace bolab
