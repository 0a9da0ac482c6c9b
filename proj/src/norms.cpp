#include "bolab/norms.hpp"

#include <cmath>
#include <limits>

#include "bolab/transform.hpp"

namespace bolab {

double sobolev_norm(const SpectralField& u, double s) {
    const Grid& g = u.grid();
    const int K = g.max_mode();
    double acc = 0.0;
    for (int n = -K; n <= K; ++n) {
        const double w = std::pow(1.0 + std::abs(g.freq(n)), 2.0 * s);
        acc += w * std::norm(u.mode(n));
    }
    return std::sqrt(g.period * acc);
}

double lebesgue_norm(const SpectralField& u, double p, int oversample) {
    if (std::isnan(p) || p < 1.0)
        throw ParamError("lebesgue_norm: p must be >= 1 (or +inf), got " + std::to_string(p));
    const auto z = to_physical_complex(u, oversample);
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : z) m = std::max(m, std::abs(v));
        return m;
    }
    const double dx = u.grid().period / static_cast<double>(z.size());
    double acc = 0.0;
    for (const auto& v : z) acc += std::pow(std::abs(v), p);
    return std::pow(dx * acc, 1.0 / p);
}

} // namespace bolab
