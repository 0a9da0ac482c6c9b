#include "bolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "bolab/errors.hpp"
#include "bolab/gauge.hpp"
#include "bolab/norms.hpp"
#include "bolab/rng.hpp"
#include "bolab/symbols.hpp"

namespace bolab::xp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Exponents.

double ExponentSpec::alpha() const { return (1.5 - s) / p - s; }

double ExponentSpec::beta() const { return (1.5 - s) * (0.25 - 0.5 / p) - s; }

double regularity_gate(double s) { return s * s - 6.0 * s + 0.75; }

// ---------------------------------------------------------------------------
// Initial data.

namespace {

const char* kind_name(InitialKind k) {
    switch (k) {
    case InitialKind::Zero: return "zero";
    case InitialKind::Cosine: return "cosine";
    case InitialKind::RoughRandom: return "rough_random";
    case InitialKind::DyadicPacket: return "dyadic_packet";
    }
    throw ParamError("InitialKind: unknown enumerator");
}

void check_amplitude(const InitialSpec& spec) {
    if (!(std::isfinite(spec.amplitude) && spec.amplitude >= 0.0))
        throw ParamError("make_initial: amplitude must be finite and non-negative");
}

} // namespace

SpectralField make_initial(const Grid& g, const InitialSpec& spec) {
    check_amplitude(spec);
    switch (spec.kind) {
    case InitialKind::Zero:
        return SpectralField(g);
    case InitialKind::Cosine: {
        if (spec.mode < 1 || spec.mode > g.max_mode())
            throw ParamError("make_initial: cosine wavenumber outside the retained band");
        SpectralField u(g);
        u.set_mode(spec.mode, cplx{spec.amplitude / 2.0, 0.0});
        u.set_mode(-spec.mode, cplx{spec.amplitude / 2.0, 0.0});
        return u;
    }
    case InitialKind::RoughRandom: {
        if (!(std::isfinite(spec.envelope_exponent) && spec.envelope_exponent > 0.0))
            throw ParamError("make_initial: envelope exponent must be positive");
        const double a = spec.amplitude;
        const double e = spec.envelope_exponent;
        return random_real_field(g, spec.seed,
                                 [a, e](int n) { return a * std::pow(1.0 + n, -e); });
    }
    case InitialKind::DyadicPacket: {
        const int band = spec.mode;
        if (band < 1 || band > g.max_mode())
            throw ParamError("make_initial: packet band outside the retained modes");
        const int lo = band / 2 + 1;
        const int count = band - band / 2;
        const double mag = spec.amplitude / std::sqrt(static_cast<double>(count));
        SpectralField u(g);
        for (int n = lo; n <= band; ++n) {
            const double theta =
                2.0 * std::numbers::pi * rng::uniform(spec.seed, 13, static_cast<uint64_t>(n));
            const cplx c = std::polar(mag, theta);
            u.set_mode(n, c);
            u.set_mode(-n, std::conj(c));
        }
        return u;
    }
    }
    throw ParamError("make_initial: unknown initial kind");
}

// ---------------------------------------------------------------------------
// Report plumbing.

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json spec_to_json(const InitialSpec& spec) {
    return json{{"kind", kind_name(spec.kind)},
                {"amplitude", spec.amplitude},
                {"mode", spec.mode},
                {"seed", spec.seed},
                {"envelope_exponent", spec.envelope_exponent}};
}

void check_scan_basics(double s, double t_final, const ScanOptions& opt) {
    if (!std::isfinite(s)) throw ParamError("scan: s must be finite");
    if (!(std::isfinite(t_final) && t_final > 0.0))
        throw ParamError("scan: t_final must be positive and finite");
    if (opt.store_every < 1) throw ParamError("scan: store_every must be >= 1");
    if (!std::isfinite(opt.dt)) throw ParamError("scan: dt must be finite");
}

EvolveParams run_params(double t_final, const ScanOptions& opt) {
    EvolveParams ep;
    ep.t_final = t_final;
    ep.dt = opt.dt;
    ep.store_every = opt.store_every;
    return ep;
}

// Least-squares slope of log2(value) against log2(axis) over positive values.
double log2_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [x, y] : pts) {
        if (!(x > 0.0 && y > 0.0)) continue;
        const double lx = std::log2(x), ly = std::log2(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    const double den = n * sxx - sx * sx;
    return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

} // namespace

std::string ScanReport::to_json() const {
    json j;
    j["scan_type"] = scan_type;
    j["seed"] = seed;
    j["s"] = s;
    j["param"] = param;
    j["t_final"] = t_final;
    j["pass"] = pass;
    j["config"] = json::parse(config_echo);
    json rws = json::array();
    for (const auto& r : rows)
        rws.push_back(json{{"trajectory", r.trajectory},
                           {"norm", r.norm},
                           {"axis", r.axis},
                           {"time", r.time},
                           {"value", r.value}});
    j["rows"] = rws;
    j["summary"] = summary;
    return j.dump(2);
}

void emit_report(const ScanReport& rep, const std::string& path, ReportFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_report: cannot open " + path);
    if (format == ReportFormat::Json) {
        out << rep.to_json() << '\n';
    } else {
        out << "scan_type,seed,s,param,trajectory,norm,axis,time,value\n";
        for (const auto& r : rep.rows)
            out << rep.scan_type << ',' << rep.seed << ',' << fmt_double(rep.s) << ','
                << fmt_double(rep.param) << ',' << r.trajectory << ',' << r.norm << ','
                << fmt_double(r.axis) << ',' << fmt_double(r.time) << ',' << fmt_double(r.value)
                << '\n';
    }
    out.flush();
    if (!out) throw IoError("emit_report: write failed for " + path);
}

// ---------------------------------------------------------------------------
// Smoothing scan.

ScanReport smoothing_scan(const InitialSpec& u0, double s, double delta, double t_final,
                          const std::vector<int>& resolutions, const ScanOptions& opt) {
    check_scan_basics(s, t_final, opt);
    if (!(std::isfinite(delta) && delta > 0.0))
        throw ParamError("smoothing_scan: delta must be positive");
    if (resolutions.empty()) throw ParamError("smoothing_scan: no resolutions given");
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
        if (resolutions[i] < 8 || resolutions[i] % 2 != 0)
            throw ParamError("smoothing_scan: resolutions must be even and >= 8");
        if (i > 0 && resolutions[i] <= resolutions[i - 1])
            throw ParamError("smoothing_scan: resolutions must be strictly increasing");
    }

    ScanReport rep;
    rep.scan_type = "smoothing";
    rep.seed = u0.seed;
    rep.s = s;
    rep.param = delta;
    rep.t_final = t_final;
    rep.config_echo = json{{"scan", "smoothing"},
                           {"u0", spec_to_json(u0)},
                           {"s", s},
                           {"delta", delta},
                           {"t_final", t_final},
                           {"resolutions", resolutions},
                           {"dt", opt.dt},
                           {"store_every", opt.store_every}}
                          .dump();

    std::vector<double> gauge_sup(resolutions.size(), 0.0);
    std::vector<double> comp_sup(resolutions.size(), 0.0);

    for (std::size_t k = 0; k < resolutions.size(); ++k) {
        const int n = resolutions[k];
        const Grid g(n);
        const SpectralField init = make_initial(g, u0);
        const Trajectory traj = evolve(init, run_params(t_final, opt));
        const SpectralField w0 = gauge_forward(init).w;
        const std::string id = "N=" + std::to_string(n);

        double gsup = 0.0, gt = 0.0, csup = 0.0, ct = 0.0;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double t = traj.times[i];
            SpectralField dw = gauge_forward(traj.states[i]).w;
            dw -= apply_symbol(symbols::schrodinger_semigroup(t), w0);
            const double gv = sobolev_norm(dw, s + delta);
            if (gv > gsup) gsup = gv, gt = t;

            SpectralField du = traj.states[i];
            du -= apply_symbol(symbols::bo_semigroup(t), init);
            const double cv = sobolev_norm(du, s + delta);
            if (cv > csup) csup = cv, ct = t;
        }
        gauge_sup[k] = gsup;
        comp_sup[k] = csup;
        rep.rows.push_back({id, "gauge_diff_sup", static_cast<double>(n), gt, gsup});
        rep.rows.push_back({id, "comparator_sup", static_cast<double>(n), ct, csup});
        rep.rows.push_back({id, "u0_Hs", static_cast<double>(n), 0.0, sobolev_norm(init, s)});
    }

    bool finite = true;
    for (std::size_t k = 0; k < resolutions.size(); ++k)
        finite = finite && std::isfinite(gauge_sup[k]) && std::isfinite(comp_sup[k]);

    rep.summary["ratio_low"] = opt.ratio_low;
    rep.summary["ratio_high"] = opt.ratio_high;
    rep.summary["comparator_min"] = opt.comparator_min;
    double gauge_final = 0.0, comp_final = 0.0;
    for (std::size_t k = 1; k < resolutions.size(); ++k) {
        const std::string tag =
            std::to_string(resolutions[k - 1]) + "_" + std::to_string(resolutions[k]);
        gauge_final = gauge_sup[k - 1] > 0.0 ? gauge_sup[k] / gauge_sup[k - 1] : 0.0;
        comp_final = comp_sup[k - 1] > 0.0 ? comp_sup[k] / comp_sup[k - 1] : 0.0;
        rep.summary["gauge_ratio_" + tag] = gauge_final;
        rep.summary["comparator_ratio_" + tag] = comp_final;
    }
    rep.pass = finite;
    if (resolutions.size() >= 2) {
        rep.summary["gauge_ratio_final"] = gauge_final;
        rep.summary["comparator_ratio_final"] = comp_final;
        rep.pass = rep.pass && gauge_final >= opt.ratio_low && gauge_final <= opt.ratio_high;
        if (opt.require_contrast) rep.pass = rep.pass && comp_final > opt.comparator_min;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Strichartz scan.

ScanReport strichartz_scan(const InitialSpec& u0, double s, double p, double t_final,
                           const std::vector<int>& dyadic_bands, const ScanOptions& opt) {
    check_scan_basics(s, t_final, opt);
    if (!(p >= 2.0 && p <= 4.0))
        throw ParamError("strichartz_scan: torus mode requires 2 <= p <= 4");
    if (!(s >= 0.0 && s <= 0.25)) throw ParamError("strichartz_scan: requires 0 <= s <= 1/4");
    if (dyadic_bands.empty()) throw ParamError("strichartz_scan: no dyadic bands given");
    for (std::size_t i = 0; i < dyadic_bands.size(); ++i) {
        const int b = dyadic_bands[i];
        if (b < 1 || (b & (b - 1)) != 0)
            throw ParamError("strichartz_scan: bands must be powers of two");
        if (i > 0 && b <= dyadic_bands[i - 1])
            throw ParamError("strichartz_scan: bands must be strictly increasing");
    }
    if (opt.store_every > 8)
        throw ParamError("strichartz_scan: store_every must stay <= 8 for the time quadrature");

    const int band_max = dyadic_bands.back();
    const int n = opt.resolution > 0 ? opt.resolution : std::max(32, 4 * band_max);
    const Grid g(n);
    if (band_max > g.max_mode())
        throw ParamError("strichartz_scan: largest band exceeds the retained modes");

    ScanReport rep;
    rep.scan_type = "strichartz";
    rep.seed = u0.seed;
    rep.s = s;
    rep.param = p;
    rep.t_final = t_final;
    rep.config_echo = json{{"scan", "strichartz"},
                           {"u0", spec_to_json(u0)},
                           {"s", s},
                           {"p", p},
                           {"t_final", t_final},
                           {"bands", dyadic_bands},
                           {"resolution", n},
                           {"dt", opt.dt},
                           {"store_every", opt.store_every}}
                          .dump();

    const SpectralField init = make_initial(g, u0);
    const Trajectory traj = evolve(init, run_params(t_final, opt));
    const std::size_t m = traj.times.size();
    const double h = traj.store_interval();

    double sup_hs_full = 0.0, sup_hs_full_t = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double v = sobolev_norm(traj.states[i], s);
        if (v > sup_hs_full) sup_hs_full = v, sup_hs_full_t = traj.times[i];
    }
    rep.rows.push_back({"u", "sup_Hs", 0.0, sup_hs_full_t, sup_hs_full});

    const ExponentSpec ex{s, p};
    std::vector<std::pair<double, double>> fit_pts;
    double max_q = 0.0;
    for (const int band : dyadic_bands) {
        const SymbolSpec block = symbols::lp_block(g, static_cast<double>(band));
        double accum = 0.0, sup_hs_band = 0.0, sup_hs_band_t = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const SpectralField pu = apply_symbol(block, traj.states[i]);
            const double lp = lebesgue_norm(pu, p);
            const double weight = (i == 0 || i + 1 == m) ? h / 2.0 : h;
            accum += weight * std::pow(lp, p);
            const double hv = sobolev_norm(pu, s);
            if (hv > sup_hs_band) sup_hs_band = hv, sup_hs_band_t = traj.times[i];
        }
        const double measured = std::pow(accum, 1.0 / p);
        const double denom = std::pow(t_final, 1.0 / p) *
                             std::pow(static_cast<double>(band), ex.beta()) *
                             (sup_hs_band + sup_hs_full * sup_hs_full);
        const double q = denom > 0.0 ? measured / denom : 0.0;
        max_q = std::max(max_q, q);
        const std::string id = "band=" + std::to_string(band);
        rep.rows.push_back({id, "Lp_spacetime", static_cast<double>(band), t_final, measured});
        rep.rows.push_back(
            {id, "sup_Hs_band", static_cast<double>(band), sup_hs_band_t, sup_hs_band});
        rep.rows.push_back({id, "certificate_Q", static_cast<double>(band), t_final, q});
        fit_pts.emplace_back(static_cast<double>(band), measured);
    }

    rep.summary["alpha"] = ex.alpha();
    rep.summary["beta"] = ex.beta();
    rep.summary["max_Q"] = max_q;
    rep.summary["slope"] = log2_slope(fit_pts);
    bool finite = std::isfinite(max_q);
    for (const auto& r : rep.rows) finite = finite && std::isfinite(r.value);
    rep.pass = finite;
    return rep;
}

// ---------------------------------------------------------------------------
// Difference scan.

ScanReport difference_scan(const InitialSpec& u0, const EvolveParams& a, const EvolveParams& b,
                           double t_final, double s, const ScanOptions& opt) {
    check_scan_basics(s, t_final, opt);
    const int n = opt.resolution > 0 ? opt.resolution : 64;
    const Grid g(n);
    const SpectralField init = make_initial(g, u0);

    EvolveParams pa = a, pb = b;
    pa.t_final = t_final;
    pb.t_final = t_final;
    const Trajectory ta = evolve(init, pa);
    const Trajectory tb = evolve(init, pb);

    // Shared sample times (the coarser run leads; match within a tight window).
    const double tol = 1e-9 * std::max(1.0, t_final);
    std::vector<std::pair<std::size_t, std::size_t>> shared;
    for (std::size_t i = 0, j = 0; i < ta.times.size(); ++i) {
        while (j < tb.times.size() && tb.times[j] < ta.times[i] - tol) ++j;
        if (j < tb.times.size() && std::abs(tb.times[j] - ta.times[i]) <= tol)
            shared.emplace_back(i, j);
    }
    if (shared.size() < 2)
        throw PreconditionError(
            "difference_scan: the two store grids share fewer than two sample times");

    ScanReport rep;
    rep.scan_type = "difference";
    rep.seed = u0.seed;
    rep.s = s;
    rep.param = 0.0;
    rep.t_final = t_final;
    rep.config_echo =
        json{{"scan", "difference"},
             {"u0", spec_to_json(u0)},
             {"s", s},
             {"t_final", t_final},
             {"resolution", n},
             {"a", {{"dt", pa.dt}, {"store_every", pa.store_every},
                    {"scheme", pa.scheme == Scheme::IFRK4 ? "ifrk4" : "ifmidpoint"}}},
             {"b", {{"dt", pb.dt}, {"store_every", pb.store_every},
                    {"scheme", pb.scheme == Scheme::IFRK4 ? "ifrk4" : "ifmidpoint"}}}}
            .dump();

    const double inf = std::numeric_limits<double>::infinity();
    double max_u = 0.0, max_w = 0.0, max_f = 0.0, max_quot = 0.0;
    for (const auto& [i, j] : shared) {
        const double t = ta.times[i];
        SpectralField du = ta.states[i];
        du -= tb.states[j];
        const double u_hs = sobolev_norm(du, s);
        const double u_l2 = sobolev_norm(du, 0.0);

        const GaugeState ga = gauge_forward(ta.states[i]);
        const GaugeState gb = gauge_forward(tb.states[j]);
        SpectralField dw = ga.w;
        dw -= gb.w;
        const double w_hs = sobolev_norm(dw, s);
        SpectralField df = ga.F;
        df -= gb.F;
        const double f_inf = lebesgue_norm(df, inf);

        rep.rows.push_back({"pair", "u_diff_Hs", t, t, u_hs});
        rep.rows.push_back({"pair", "w_diff_Hs", t, t, w_hs});
        rep.rows.push_back({"pair", "F_diff_Linf", t, t, f_inf});
        rep.rows.push_back({"pair", "u_diff_L2", t, t, u_l2});
        max_u = std::max(max_u, u_hs);
        max_w = std::max(max_w, w_hs);
        max_f = std::max(max_f, f_inf);
        if (u_l2 > 0.0) max_quot = std::max(max_quot, f_inf / u_l2);
    }

    rep.summary["common_times"] = static_cast<double>(shared.size());
    rep.summary["max_u_diff_Hs"] = max_u;
    rep.summary["max_w_diff_Hs"] = max_w;
    rep.summary["max_F_diff_Linf"] = max_f;
    rep.summary["linf_l2_max_quotient"] = max_quot;
    rep.summary["linf_l2_reference"] = std::sqrt(std::numbers::pi / 6.0);
    bool finite = true;
    for (const auto& r : rep.rows) finite = finite && std::isfinite(r.value);
    rep.pass = finite;
    return rep;
}

} // namespace bolab::xp
