#pragma once

#include <cstdint>

#include "bolab/field.hpp"

namespace bolab {

// Deterministic, platform-independent random numbers, keyed by (seed, stream).
// Used for the random data experiments: coefficients are keyed by *mode index*,
// so refining the grid keeps every coarse-grid coefficient bit-identical (the
// nested ensembles the scaling scans rely on). splitmix64 underneath; we avoid
// std::uniform_real_distribution on purpose (its output is implementation
// defined, which would break cross-platform reproducibility of the CSV files).
namespace rng {

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// One 64-bit value for a (seed, stream, index) triple; stateless.
inline uint64_t keyed(uint64_t seed, uint64_t stream, uint64_t index) {
    uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0xD1B54A32D192ED03ull * stream;
    (void)splitmix64(s);
    s ^= 0x8CB92BA72F3D8DD7ull * index;
    return splitmix64(s);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform(uint64_t seed, uint64_t stream, uint64_t index) {
    return static_cast<double>(keyed(seed, stream, index) >> 11) * 0x1.0p-53;
}

} // namespace rng

// Random real field with a prescribed spectral envelope: for 1 <= n <= K
//   c_n = amp(n) * exp(i theta_n),  c_{-n} = conj(c_n),  c_0 = 0,
// theta_n uniform. Envelope choices live with their experiments; this is the
// shared plumbing.
template <typename Envelope>
SpectralField random_real_field(const Grid& g, uint64_t seed, Envelope amp) {
    SpectralField u(g);
    const int K = g.max_mode();
    for (int n = 1; n <= K; ++n) {
        const double theta = 2.0 * std::numbers::pi * rng::uniform(seed, 1, static_cast<uint64_t>(n));
        const cplx c = std::polar(amp(n), theta);
        u.set_mode(n, c);
        u.set_mode(-n, std::conj(c));
    }
    return u;
}

} // namespace bolab
