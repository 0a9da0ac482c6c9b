#include "bolab/trajectory.hpp"

#include <bit>
#include <fstream>

#include <json.hpp>

namespace bolab {

static_assert(std::endian::native == std::endian::little,
              "trajectory files are little-endian; big-endian hosts are not supported");

using nlohmann::json;

void save_trajectory(const Trajectory& traj, const std::string& path) {
    if (traj.times.size() != traj.states.size())
        throw ParamError("save_trajectory: times/states length mismatch");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("save_trajectory: cannot open '" + path + "' for writing");

    json header;
    header["format"] = "bolab-trajectory";
    header["version"] = 1;
    header["num_modes"] = traj.grid.num_modes;
    header["period"] = traj.grid.period;
    header["domain"] = traj.grid.mode == DomainMode::Torus ? "torus" : "line";
    header["count"] = traj.times.size();
    header["config"] = json::parse(traj.config_echo.empty() ? "{}" : traj.config_echo);
    header["diagnostics"] = {
        {"mean_initial", traj.diag.mean_initial},
        {"l2_initial", traj.diag.l2_initial},
        {"mean_drift_max", traj.diag.mean_drift_max},
        {"l2_drift_max", traj.diag.l2_drift_max},
        {"tail_advisory", traj.diag.tail_advisory},
        {"tail_ratio", traj.diag.tail_ratio},
        {"message", traj.diag.message},
    };
    header["mean_series"] = traj.mean_series;
    header["l2_series"] = traj.l2_series;
    os << header.dump() << "\n";

    const int N = traj.grid.num_modes;
    std::vector<double> rec(1 + 2 * static_cast<size_t>(N));
    for (size_t i = 0; i < traj.times.size(); ++i) {
        rec[0] = traj.times[i];
        size_t k = 1;
        for (int n = -N / 2; n <= N / 2 - 1; ++n) {
            const cplx z = traj.states[i].mode(n);
            rec[k++] = z.real();
            rec[k++] = z.imag();
        }
        os.write(reinterpret_cast<const char*>(rec.data()),
                 static_cast<std::streamsize>(rec.size() * sizeof(double)));
    }
    if (!os) throw IoError("save_trajectory: write failed for '" + path + "'");
}

Trajectory load_trajectory(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("load_trajectory: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line)) throw IoError("load_trajectory: missing header line");

    json header;
    try {
        header = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ConfigError("load_trajectory: bad header JSON: " + std::string(e.what()));
    }
    if (header.value("format", "") != "bolab-trajectory")
        throw ConfigError("load_trajectory: '" + path + "' is not a trajectory file");
    if (header.value("version", 0) != 1)
        throw ConfigError("load_trajectory: unsupported version " +
                          std::to_string(header.value("version", 0)));

    Trajectory traj;
    const int N = header.at("num_modes").get<int>();
    const double period = header.at("period").get<double>();
    const auto domain = header.value("domain", "torus") == "line" ? DomainMode::Line : DomainMode::Torus;
    traj.grid = Grid(N, period, domain);
    traj.config_echo = header.value("config", json::object()).dump();
    const auto& d = header.at("diagnostics");
    traj.diag.mean_initial = d.value("mean_initial", 0.0);
    traj.diag.l2_initial = d.value("l2_initial", 0.0);
    traj.diag.mean_drift_max = d.value("mean_drift_max", 0.0);
    traj.diag.l2_drift_max = d.value("l2_drift_max", 0.0);
    traj.diag.tail_advisory = d.value("tail_advisory", false);
    traj.diag.tail_ratio = d.value("tail_ratio", 0.0);
    traj.diag.message = d.value("message", "");
    traj.mean_series = header.value("mean_series", std::vector<double>{});
    traj.l2_series = header.value("l2_series", std::vector<double>{});

    const auto count = header.at("count").get<size_t>();
    std::vector<double> rec(1 + 2 * static_cast<size_t>(N));
    for (size_t i = 0; i < count; ++i) {
        is.read(reinterpret_cast<char*>(rec.data()),
                static_cast<std::streamsize>(rec.size() * sizeof(double)));
        if (!is)
            throw ConfigError("load_trajectory: truncated file (record " + std::to_string(i) + " of " +
                              std::to_string(count) + ")");
        traj.times.push_back(rec[0]);
        SpectralField u(traj.grid);
        size_t k = 1;
        for (int n = -N / 2; n <= N / 2 - 1; ++n) {
            u.set_mode(n, cplx{rec[k], rec[k + 1]});
            k += 2;
        }
        traj.states.push_back(std::move(u));
    }
    return traj;
}

} // namespace bolab
