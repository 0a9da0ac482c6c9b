#include "bolab/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bolab/errors.hpp"
#include "bolab/experiments.hpp"
#include "bolab/gauge.hpp"
#include "bolab/normalform.hpp"
#include "bolab/norms.hpp"
#include "bolab/solver.hpp"
#include "bolab/trajectory.hpp"

namespace bolab::cli {

namespace {

using nlohmann::json;
using namespace bolab::nf;
using namespace bolab::xp;

// ---------------------------------------------------------------------------
// Config files. JSON object with "version": 1; keys mirror the long option
// names (underscores for dashes). A value from the file is used only when the
// matching option was not given on the command line.

std::string dashed(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

class ConfigOverlay {
  public:
    explicit ConfigOverlay(CLI::App* sub) : sub_(sub) {}

    template <typename T>
    void bind(const std::string& key, T* target) {
        setters_[key] = [target, key](const json& v) {
            try {
                *target = v.get<T>();
            } catch (const json::exception& e) {
                throw ConfigError("config field '" + key + "': " + e.what());
            }
        };
    }

    void apply(const std::string& path) const {
        if (path.empty()) return;
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot open config file: " + path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config parse: ") + e.what());
        }
        if (!j.is_object()) throw ConfigError("config root must be a JSON object");
        if (!j.contains("version"))
            throw ConfigError("config requires a \"version\" field (expected 1)");
        if (!(j["version"].is_number_integer() && j["version"].get<int>() == 1))
            throw ConfigError("unsupported config version (expected 1)");
        for (const auto& [k, v] : j.items()) {
            if (k == "version") continue;
            const auto it = setters_.find(k);
            if (it == setters_.end()) throw ConfigError("unknown config key: " + k);
            if (sub_->count(dashed(k)) > 0) continue; // explicit flags win
            it->second(v);
        }
    }

  private:
    CLI::App* sub_;
    std::map<std::string, std::function<void(const json&)>> setters_;
};

// ---------------------------------------------------------------------------
// Small shared pieces.

InitialKind parse_kind(const std::string& s) {
    if (s == "zero") return InitialKind::Zero;
    if (s == "cosine") return InitialKind::Cosine;
    if (s == "rough" || s == "rough_random") return InitialKind::RoughRandom;
    if (s == "packet" || s == "dyadic_packet") return InitialKind::DyadicPacket;
    throw ConfigError("unknown initial kind '" + s + "' (zero|cosine|rough|packet)");
}

Scheme parse_scheme(const std::string& s) {
    if (s == "ifrk4") return Scheme::IFRK4;
    if (s == "ifmidpoint") return Scheme::IFMidpoint;
    throw ConfigError("unknown scheme '" + s + "' (ifrk4|ifmidpoint)");
}

Dealias parse_dealias(const std::string& s) {
    if (s == "none") return Dealias::None;
    if (s == "two-thirds" || s == "two_thirds") return Dealias::TwoThirds;
    throw ConfigError("unknown dealias mode '" + s + "' (none|two-thirds)");
}

ReportFormat parse_format(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw ConfigError("unknown report format '" + s + "' (csv|json)");
}

// Initial-data options shared by the data-driven subcommands.
struct DataOpts {
    std::string u0 = "rough";
    double amplitude = 0.1;
    int mode = 1;
    std::uint64_t seed = 1;
    double envelope = 0.76;

    void add_to(CLI::App* sub, ConfigOverlay* cfg) {
        sub->add_option("--u0", u0, "Initial data kind: zero|cosine|rough|packet")
            ->capture_default_str();
        sub->add_option("--amplitude", amplitude, "Data amplitude")->capture_default_str();
        sub->add_option("--mode", mode, "Cosine wavenumber / packet band")->capture_default_str();
        sub->add_option("--seed", seed, "Random seed for the seeded kinds")
            ->capture_default_str();
        sub->add_option("--envelope", envelope, "Rough-data spectral decay exponent")
            ->capture_default_str();
        cfg->bind("u0", &u0);
        cfg->bind("amplitude", &amplitude);
        cfg->bind("mode", &mode);
        cfg->bind("seed", &seed);
        cfg->bind("envelope", &envelope);
    }

    InitialSpec spec() const {
        InitialSpec s;
        s.kind = parse_kind(u0);
        s.amplitude = amplitude;
        s.mode = mode;
        s.seed = seed;
        s.envelope_exponent = envelope;
        return s;
    }

    json echo() const {
        return json{{"u0", u0},
                    {"amplitude", amplitude},
                    {"mode", mode},
                    {"seed", seed},
                    {"envelope", envelope}};
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << text << '\n';
    out.flush();
    if (!out) throw IoError("write failed for: " + path);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_line(const json& j) { std::printf("%s\n", j.dump().c_str()); }

void maybe_emit(const ScanReport& rep, const std::string& out, const std::string& format) {
    if (out.empty()) return;
    emit_report(rep, out, parse_format(format));
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the process exit code.

struct SolveCmd {
    DataOpts data;
    int grid_n = 64;
    double t_final = 1.0;
    double dt = 0.0;
    std::string scheme = "ifrk4";
    std::string dealias = "none";
    int store_every = 1;
    std::string out = "trajectory.bin";

    int execute() const {
        const Grid g(grid_n);
        const SpectralField u0 = make_initial(g, data.spec());
        EvolveParams ep;
        ep.t_final = t_final;
        ep.dt = dt;
        ep.scheme = parse_scheme(scheme);
        ep.dealias = parse_dealias(dealias);
        ep.store_every = store_every;
        Trajectory traj = evolve(u0, ep);
        traj.config_echo = json{{"version", 1},
                                {"command", "solve"},
                                {"data", data.echo()},
                                {"N", grid_n},
                                {"T", t_final},
                                {"dt", dt},
                                {"scheme", scheme},
                                {"dealias", dealias},
                                {"store_every", store_every}}
                               .dump();
        save_trajectory(traj, out);
        print_line(json{{"command", "solve"},
                        {"out", out},
                        {"samples", traj.times.size()},
                        {"t_final", traj.times.back()},
                        {"mean_drift", traj.diag.mean_drift_max},
                        {"l2_drift", traj.diag.l2_drift_max},
                        {"tail_advisory", traj.diag.tail_advisory}});
        return 0;
    }
};

struct GaugeCheckCmd {
    std::string traj_path;
    std::string out;
    double tol = 0.0;

    int execute() const {
        const Trajectory traj = load_trajectory(traj_path);
        const std::vector<double> res = gauge_residual(traj);
        double max_res = 0.0;
        for (const double r : res) max_res = std::max(max_res, r);
        if (!out.empty()) {
            std::string text = "time,residual\n";
            for (std::size_t i = 0; i < res.size(); ++i)
                text += fmt17(traj.times[i + 1]) + "," + fmt17(res[i]) + "\n";
            std::ofstream f(out, std::ios::binary);
            if (!f) throw IoError("cannot open output file: " + out);
            f << text;
            if (!f) throw IoError("write failed for: " + out);
        }
        print_line(json{{"command", "gauge-check"},
                        {"traj", traj_path},
                        {"samples", res.size()},
                        {"store_interval", traj.store_interval()},
                        {"max_residual", max_res},
                        {"tol", tol}});
        return (tol > 0.0 && max_res > tol) ? 1 : 0;
    }
};

struct VerifyLatticeCmd {
    int max_freq = 0;
    double big_m = 4.0;
    std::string out;
    int threads = 0;

    int execute() const {
        LatticeParams lp;
        if (max_freq > 0) {
            lp.pair_range = max_freq;
            lp.additivity_range = std::min(max_freq, 64);
            lp.quad_range = std::min(max_freq, 32);
        }
        lp.M = big_m;
        lp.threads = threads;
        const LatticeReport rep = verify_lattice(lp);
        if (!out.empty()) write_text(out, rep.to_json());
        unsigned long long total_violations = 0;
        for (const auto& c : rep.checks) {
            total_violations += c.violations;
            std::printf("check %-34s range=%-4d scanned=%llu support=%llu violations=%llu\n",
                        c.name.c_str(), c.range, c.scanned, c.support_points, c.violations);
        }
        print_line(json{{"command", "verify-lattice"},
                        {"pair_range", lp.pair_range},
                        {"additivity_range", lp.additivity_range},
                        {"quad_range", lp.quad_range},
                        {"M", lp.M},
                        {"checks", rep.checks.size()},
                        {"violations", total_violations},
                        {"pass", rep.pass}});
        return rep.pass ? 0 : 1;
    }
};

struct NfResidualCmd {
    std::string traj_path;
    double big_m = 16.0;
    double s = 0.25;
    double delta = 0.125;
    double tol = 0.0;
    std::string out;
    int threads = 0;

    int execute() const {
        const Trajectory traj = load_trajectory(traj_path);
        const NfResidualReport rep = normalform_residual(traj, big_m, s, delta, threads);
        if (!out.empty()) write_text(out, rep.to_json());
        print_line(json{{"command", "nf-residual"},
                        {"traj", traj_path},
                        {"samples", rep.samples},
                        {"M", rep.M},
                        {"s", rep.s},
                        {"delta", rep.delta},
                        {"lhs_norm", rep.lhs_norm},
                        {"abs_residual", rep.abs_residual},
                        {"rel_residual", rep.rel_residual},
                        {"mu_mean", rep.mu_mean},
                        {"mu_drift", rep.mu_drift},
                        {"tol", tol}});
        return (tol > 0.0 && rep.rel_residual > tol) ? 1 : 0;
    }
};

struct SmoothingCmd {
    DataOpts data;
    double s = 0.25;
    double delta = 0.125;
    double t_final = 0.5;
    std::vector<int> resolutions = {32, 64, 128, 256};
    double dt = 0.0;
    int store_every = 4;
    bool require_contrast = false;
    std::string format = "csv";
    std::string out;

    int execute() const {
        ScanOptions opt;
        opt.dt = dt;
        opt.store_every = store_every;
        opt.require_contrast = require_contrast;
        const ScanReport rep = smoothing_scan(data.spec(), s, delta, t_final, resolutions, opt);
        maybe_emit(rep, out, format);
        json summary(rep.summary);
        print_line(json{{"command", "smoothing"},
                        {"pass", rep.pass},
                        {"out", out},
                        {"summary", summary}});
        return rep.pass ? 0 : 1;
    }
};

struct StrichartzCmd {
    DataOpts data;
    double s = 0.25;
    double p = 4.0;
    double t_final = 0.5;
    std::vector<int> bands = {8, 16, 32};
    int resolution = 0;
    double dt = 0.0;
    int store_every = 4;
    std::string format = "csv";
    std::string out;

    int execute() const {
        ScanOptions opt;
        opt.dt = dt;
        opt.store_every = store_every;
        opt.resolution = resolution;
        const ScanReport rep = strichartz_scan(data.spec(), s, p, t_final, bands, opt);
        maybe_emit(rep, out, format);
        json summary(rep.summary);
        print_line(json{{"command", "strichartz"},
                        {"pass", rep.pass},
                        {"out", out},
                        {"summary", summary}});
        return rep.pass ? 0 : 1;
    }
};

struct DifferenceCmd {
    DataOpts data;
    double s = 0.25;
    double t_final = 0.5;
    int resolution = 0;
    double dt_a = 0.0, dt_b = 0.0;
    int store_a = 1, store_b = 1;
    std::string scheme_a = "ifrk4", scheme_b = "ifrk4";
    std::string format = "csv";
    std::string out;

    int execute() const {
        EvolveParams a, b;
        a.dt = dt_a;
        a.store_every = store_a;
        a.scheme = parse_scheme(scheme_a);
        b.dt = dt_b;
        b.store_every = store_b;
        b.scheme = parse_scheme(scheme_b);
        ScanOptions opt;
        opt.resolution = resolution;
        const ScanReport rep = difference_scan(data.spec(), a, b, t_final, s, opt);
        maybe_emit(rep, out, format);
        json summary(rep.summary);
        print_line(json{{"command", "difference"},
                        {"pass", rep.pass},
                        {"out", out},
                        {"summary", summary}});
        return rep.pass ? 0 : 1;
    }
};

} // namespace

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv) {
    CLI::App app{"bolab: a pseudo-spectral laboratory for the Benjamin-Ono equation"};
    app.set_version_flag("--version", "bolab 1.0.0");
    app.require_subcommand(0, 1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "Cap worker threads (fallback: BOLAB_THREADS, then hardware)");

    // One config-path + overlay pair per subcommand.
    std::vector<std::string> cfg_paths(7);
    std::vector<ConfigOverlay> overlays;
    overlays.reserve(7);
    int exit_code = 0;

    const auto add_config = [&](CLI::App* sub, std::size_t i) -> ConfigOverlay* {
        sub->add_option("--config", cfg_paths[i],
                        "JSON config file (\"version\": 1 required; flags override "
                        "file values; unknown keys rejected)");
        overlays.emplace_back(sub);
        return &overlays.back();
    };

    // --- solve ---------------------------------------------------------
    SolveCmd solve;
    {
        CLI::App* sub = app.add_subcommand(
            "solve", "Evolve an initial datum and write the trajectory file");
        ConfigOverlay* cfg = add_config(sub, 0);
        solve.data.u0 = "zero";
        solve.data.add_to(sub, cfg);
        sub->add_option("--N", solve.grid_n, "Grid size (modes |n| < N/2)")
            ->capture_default_str();
        sub->add_option("--T", solve.t_final, "Final time")->capture_default_str();
        sub->add_option("--dt", solve.dt, "Time step (0: advective default)")
            ->capture_default_str();
        sub->add_option("--scheme", solve.scheme, "ifrk4|ifmidpoint")->capture_default_str();
        sub->add_option("--dealias", solve.dealias, "none|two-thirds")->capture_default_str();
        sub->add_option("--store-every", solve.store_every, "Keep every k-th step")
            ->capture_default_str();
        sub->add_option("--out", solve.out, "Trajectory output path")->capture_default_str();
        cfg->bind("N", &solve.grid_n);
        cfg->bind("T", &solve.t_final);
        cfg->bind("dt", &solve.dt);
        cfg->bind("scheme", &solve.scheme);
        cfg->bind("dealias", &solve.dealias);
        cfg->bind("store_every", &solve.store_every);
        cfg->bind("out", &solve.out);
        sub->callback([&, cfg] {
            cfg->apply(cfg_paths[0]);
            exit_code = solve.execute();
        });
    }

    // --- gauge-check -----------------------------------------------------
    GaugeCheckCmd gauge_check;
    {
        CLI::App* sub = app.add_subcommand(
            "gauge-check", "Measure the gauge-equation residual on a stored trajectory");
        ConfigOverlay* cfg = add_config(sub, 1);
        sub->add_option("--traj", gauge_check.traj_path, "Input trajectory file");
        sub->add_option("--out", gauge_check.out, "Residual series CSV (time,residual)");
        sub->add_option("--tol", gauge_check.tol,
                        "Fail (exit 1) when the max residual exceeds this (0: report only)")
            ->capture_default_str();
        cfg->bind("traj", &gauge_check.traj_path);
        cfg->bind("out", &gauge_check.out);
        cfg->bind("tol", &gauge_check.tol);
        sub->callback([&, cfg] {
            cfg->apply(cfg_paths[1]);
            if (gauge_check.traj_path.empty())
                throw ConfigError("gauge-check: --traj (or config key \"traj\") is required");
            exit_code = gauge_check.execute();
        });
    }

    // --- verify-lattice ----------------------------------------------------
    VerifyLatticeCmd verify;
    {
        CLI::App* sub = app.add_subcommand(
            "verify-lattice",
            "Exhaustively check the multiplier algebra on the integer lattice "
            "(exit 0 only with zero violations)");
        ConfigOverlay* cfg = add_config(sub, 2);
        sub->add_option("--max-freq", verify.max_freq,
                        "Frequency range F: bilinear scans use |xi| <= F, phase "
                        "additivity min(F,64), quadrilinear multipliers min(F,32) "
                        "(0: the defaults 256/64/32)")
            ->capture_default_str();
        sub->add_option("--M", verify.big_m, "Near-resonance threshold")->capture_default_str();
        sub->add_option("--out", verify.out, "Write the full JSON report here");
        cfg->bind("max_freq", &verify.max_freq);
        cfg->bind("M", &verify.big_m);
        cfg->bind("out", &verify.out);
        sub->callback([&, cfg] {
            cfg->apply(cfg_paths[2]);
            verify.threads = threads;
            exit_code = verify.execute();
        });
    }

    // --- nf-residual ---------------------------------------------------
    NfResidualCmd nf;
    {
        CLI::App* sub = app.add_subcommand(
            "nf-residual",
            "Measure the integrated normal-form identity residual on a trajectory");
        ConfigOverlay* cfg = add_config(sub, 3);
        sub->add_option("--traj", nf.traj_path, "Input trajectory file");
        sub->add_option("--M", nf.big_m, "Near-resonance threshold")->capture_default_str();
        sub->add_option("--s", nf.s, "Sobolev index of the defect norm")->capture_default_str();
        sub->add_option("--delta", nf.delta, "Extra smoothing index reported alongside")
            ->capture_default_str();
        sub->add_option("--tol", nf.tol,
                        "Fail (exit 1) when the relative residual exceeds this (0: report only)")
            ->capture_default_str();
        sub->add_option("--out", nf.out, "Write the full JSON report here");
        cfg->bind("traj", &nf.traj_path);
        cfg->bind("M", &nf.big_m);
        cfg->bind("s", &nf.s);
        cfg->bind("delta", &nf.delta);
        cfg->bind("tol", &nf.tol);
        cfg->bind("out", &nf.out);
        sub->callback([&, cfg] {
            cfg->apply(cfg_paths[3]);
            if (nf.traj_path.empty())
                throw ConfigError("nf-residual: --traj (or config key \"traj\") is required");
            nf.threads = threads;
            exit_code = nf.execute();
        });
    }

    // --- smoothing -------------------------------------------------------
    SmoothingCmd smoothing;
    {
        CLI::App* sub = app.add_subcommand(
            "smoothing", "Resolution-refinement scan of the gauge smoothing contrast");
        ConfigOverlay* cfg = add_config(sub, 4);
        smoothing.data.add_to(sub, cfg);
        sub->add_option("--s", smoothing.s, "Base Sobolev index")->capture_default_str();
        sub->add_option("--delta", smoothing.delta, "Smoothing gain")->capture_default_str();
        sub->add_option("--T", smoothing.t_final, "Final time")->capture_default_str();
        sub->add_option("--resolutions", smoothing.resolutions,
                        "Grid sizes, strictly increasing (comma separated)")
            ->delimiter(',')
            ->capture_default_str();
        sub->add_option("--dt", smoothing.dt, "Time step (0: advective default)")
            ->capture_default_str();
        sub->add_option("--store-every", smoothing.store_every, "Sampling stride")
            ->capture_default_str();
        sub->add_flag("--require-contrast", smoothing.require_contrast,
                      "Also require the ungauged comparator ratio to exceed its floor");
        sub->add_option("--format", smoothing.format, "csv|json")->capture_default_str();
        sub->add_option("--out", smoothing.out, "Report output path");
        cfg->bind("s", &smoothing.s);
        cfg->bind("delta", &smoothing.delta);
        cfg->bind("T", &smoothing.t_final);
        cfg->bind("resolutions", &smoothing.resolutions);
        cfg->bind("dt", &smoothing.dt);
        cfg->bind("store_every", &smoothing.store_every);
        cfg->bind("require_contrast", &smoothing.require_contrast);
        cfg->bind("format", &smoothing.format);
        cfg->bind("out", &smoothing.out);
        sub->callback([&, cfg] {
            cfg->apply(cfg_paths[4]);
            exit_code = smoothing.execute();
        });
    }

    // --- strichartz ------------------------------------------------------
    StrichartzCmd strichartz;
    {
        CLI::App* sub = app.add_subcommand(
            "strichartz", "Per-band space-time L^p masses and certificate quotients");
        ConfigOverlay* cfg = add_config(sub, 5);
        strichartz.data.u0 = "packet";
        strichartz.data.amplitude = 0.2;
        strichartz.data.mode = 16;
        strichartz.data.add_to(sub, cfg);
        sub->add_option("--s", strichartz.s, "Sobolev index (0 <= s <= 1/4)")
            ->capture_default_str();
        sub->add_option("--p", strichartz.p, "Lebesgue exponent (2 <= p <= 4)")
            ->capture_default_str();
        sub->add_option("--T", strichartz.t_final, "Final time")->capture_default_str();
        sub->add_option("--bands", strichartz.bands,
                        "Dyadic bands, powers of two, increasing (comma separated)")
            ->delimiter(',')
            ->capture_default_str();
        sub->add_option("--resolution", strichartz.resolution,
                        "Grid size (0: 4x the largest band)")
            ->capture_default_str();
        sub->add_option("--dt", strichartz.dt, "Time step (0: advective default)")
            ->capture_default_str();
        sub->add_option("--store-every", strichartz.store_every, "Sampling stride (<= 8)")
            ->capture_default_str();
        sub->add_option("--format", strichartz.format, "csv|json")->capture_default_str();
        sub->add_option("--out", strichartz.out, "Report output path");
        cfg->bind("s", &strichartz.s);
        cfg->bind("p", &strichartz.p);
        cfg->bind("T", &strichartz.t_final);
        cfg->bind("bands", &strichartz.bands);
        cfg->bind("resolution", &strichartz.resolution);
        cfg->bind("dt", &strichartz.dt);
        cfg->bind("store_every", &strichartz.store_every);
        cfg->bind("format", &strichartz.format);
        cfg->bind("out", &strichartz.out);
        sub->callback([&, cfg] {
            cfg->apply(cfg_paths[5]);
            exit_code = strichartz.execute();
        });
    }

    // --- difference ------------------------------------------------------
    DifferenceCmd difference;
    {
        CLI::App* sub = app.add_subcommand(
            "difference", "Compare two solver configurations on the same initial datum");
        ConfigOverlay* cfg = add_config(sub, 6);
        difference.data.u0 = "cosine";
        difference.data.amplitude = 0.2;
        difference.data.add_to(sub, cfg);
        sub->add_option("--s", difference.s, "Sobolev index of the difference norms")
            ->capture_default_str();
        sub->add_option("--T", difference.t_final, "Final time")->capture_default_str();
        sub->add_option("--resolution", difference.resolution, "Grid size (0: 64)")
            ->capture_default_str();
        sub->add_option("--dt-a", difference.dt_a, "Step of run A (0: default)")
            ->capture_default_str();
        sub->add_option("--dt-b", difference.dt_b, "Step of run B (0: default)")
            ->capture_default_str();
        sub->add_option("--store-a", difference.store_a, "Store stride of run A")
            ->capture_default_str();
        sub->add_option("--store-b", difference.store_b, "Store stride of run B")
            ->capture_default_str();
        sub->add_option("--scheme-a", difference.scheme_a, "ifrk4|ifmidpoint")
            ->capture_default_str();
        sub->add_option("--scheme-b", difference.scheme_b, "ifrk4|ifmidpoint")
            ->capture_default_str();
        sub->add_option("--format", difference.format, "csv|json")->capture_default_str();
        sub->add_option("--out", difference.out, "Report output path");
        cfg->bind("s", &difference.s);
        cfg->bind("T", &difference.t_final);
        cfg->bind("resolution", &difference.resolution);
        cfg->bind("dt_a", &difference.dt_a);
        cfg->bind("dt_b", &difference.dt_b);
        cfg->bind("store_a", &difference.store_a);
        cfg->bind("store_b", &difference.store_b);
        cfg->bind("scheme_a", &difference.scheme_a);
        cfg->bind("scheme_b", &difference.scheme_b);
        cfg->bind("format", &difference.format);
        cfg->bind("out", &difference.out);
        sub->callback([&, cfg] {
            cfg->apply(cfg_paths[6]);
            exit_code = difference.execute();
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ParamError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "run failed: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "run failed: %s\n", e.what());
        return 1;
    }

    if (app.get_subcommands().empty()) {
        std::fprintf(stderr, "%s", app.help().c_str());
        return 2;
    }
    return exit_code;
}

} // namespace bolab::cli
