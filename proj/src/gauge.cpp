#include "bolab/gauge.hpp"

#include <cmath>

#include "bolab/norms.hpp"
#include "bolab/symbols.hpp"
#include "bolab/transform.hpp"

namespace bolab {

MeanReduction reduce_mean(const SpectralField& u0) {
    if (!u0.is_real(1e-10))
        throw PreconditionError("reduce_mean: input is not real (defect " +
                                std::to_string(u0.reality_defect()) + ")");
    MeanReduction red;
    red.mean = u0.mean_coeff().real();
    red.velocity = 2.0 * red.mean;
    red.v0 = u0;
    red.v0.set_mode(0, cplx{0.0, 0.0});
    return red;
}

SpectralField unreduce_mean(const SpectralField& v, const MeanReduction& red, double t) {
    const Grid& g = v.grid();
    SpectralField u(g);
    for (int n = -g.max_mode(); n <= g.max_mode(); ++n) {
        if (n == 0) continue;
        u.set_mode(n, v.mode(n) * std::polar(1.0, static_cast<double>(n) * red.velocity * t));
    }
    u.set_mode(0, cplx{red.mean, 0.0});
    return u;
}

GaugeState gauge_forward(const SpectralField& u, int oversample) {
    if (!u.is_real(1e-10))
        throw PreconditionError("gauge_forward: input is not real (defect " +
                                std::to_string(u.reality_defect()) + ")");
    const double m = std::abs(u.mean_coeff());
    if (m > 1e-12)
        throw PreconditionError("gauge_forward: input must have zero mean, |c_0| = " +
                                std::to_string(m) + "; apply reduce_mean first");

    GaugeState gs;
    gs.F = inverse_derivative(u, 1e-12);
    gs.exp_miF = complex_exp(gs.F, -1.0, oversample);
    gs.W = apply_symbol(symbols::riesz_plus(), gs.exp_miF);
    gs.w = apply_symbol(symbols::derivative(), gs.W);

    const Grid& g = u.grid();
    double tail = 0.0, total = 0.0;
    for (int n = -g.max_mode(); n <= g.max_mode(); ++n) {
        const double e = std::norm(gs.exp_miF.mode(n));
        total += e;
        if (std::abs(n) > g.num_modes / 4) tail += e;
    }
    gs.tail_ratio = total > 0.0 ? std::sqrt(tail / total) : 0.0;
    return gs;
}

SpectralField reconstruct_u(const SpectralField& w, const SpectralField& F, int oversample) {
    w.check_same_grid(F);
    SpectralField exp_piF = complex_exp(F, +1.0, oversample);
    SpectralField exp_miF = complex_exp(F, -1.0, oversample);
    SpectralField minus_part =
        apply_symbol(symbols::derivative(), apply_symbol(symbols::riesz_minus(), exp_miF));
    SpectralField inner = w + minus_part;
    SpectralField out = multiply(exp_piF, inner, oversample);
    return cplx{0.0, 1.0} * out;
}

SpectralField negligible_term(const SpectralField& f, const SpectralField& g) {
    f.check_same_grid(g);
    const Grid& grid = f.grid();
    SpectralField pm_dg = apply_symbol(symbols::riesz_minus(), apply_symbol(symbols::derivative(), g));
    if (grid.mode == DomainMode::Torus) {
        SpectralField prod = multiply(f, pm_dg);
        SpectralField out = apply_symbol(symbols::p_lo(grid),
                                         apply_symbol(symbols::riesz_plus(),
                                                      apply_symbol(symbols::derivative(), prod)));
        return cplx{-2.0, 0.0} * out;
    }
    // Line mode: low-pass f first, project the output to the high analytic band.
    SpectralField f_lo = apply_symbol(symbols::p_lo(grid), f);
    SpectralField prod = multiply(f_lo, pm_dg);
    SpectralField dprod = apply_symbol(symbols::derivative(), prod);
    SpectralField out = apply_symbol(symbols::chi_plus(grid), dprod);
    SpectralField lo_of_out = apply_symbol(symbols::p_lo(grid), out);
    return cplx{-2.0, 0.0} * (out - lo_of_out);
}

double mean_of_square(const SpectralField& u) {
    const Grid& g = u.grid();
    cplx acc{0.0, 0.0};
    for (int n = -g.max_mode(); n <= g.max_mode(); ++n) acc += u.mode(n) * u.mode(-n);
    return acc.real();
}

std::vector<double> gauge_residual(const Trajectory& traj) {
    const size_t K = traj.times.size();
    if (K < 3) throw ParamError("gauge_residual: need at least 3 stored times");
    const double h = traj.times[1] - traj.times[0];
    if (!(h > 0.0)) throw ParamError("gauge_residual: stored times must increase");
    for (size_t i = 1; i + 1 < K; ++i)
        if (std::abs((traj.times[i + 1] - traj.times[i]) - h) > 1e-10 * std::max(1.0, h))
            throw ParamError("gauge_residual: stored times are not uniformly spaced");

    std::vector<SpectralField> ws;
    ws.reserve(K);
    for (size_t i = 0; i < K; ++i) ws.push_back(gauge_forward(traj.states[i]).w);

    auto dxx = [](const SpectralField& a) {
        return apply_symbol(symbols::derivative(), apply_symbol(symbols::derivative(), a));
    };

    std::vector<double> out;
    out.reserve(K - 2);
    for (size_t i = 1; i + 1 < K; ++i) {
        SpectralField dwdt = cplx{1.0 / (2.0 * h), 0.0} * (ws[i + 1] - ws[i - 1]);
        SpectralField lin = cplx{0.0, 1.0} * dxx(ws[i]);
        SpectralField conv = multiply(inverse_derivative(ws[i]), // exact: w has no zero mode
                                      apply_symbol(symbols::riesz_minus(),
                                                   apply_symbol(symbols::derivative(), traj.states[i])));
        SpectralField nl = cplx{-2.0, 0.0} *
                           apply_symbol(symbols::riesz_plus(), apply_symbol(symbols::derivative(), conv));
        SpectralField mean_phase = cplx{0.0, mean_of_square(traj.states[i])} * ws[i];
        out.push_back(sobolev_norm(dwdt - lin - nl - mean_phase, 0.0));
    }
    return out;
}

} // namespace bolab
