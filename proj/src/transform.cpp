#include "bolab/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace bolab {
namespace {

// One cached FFTW plan bound to its own buffers. FFTW planning is not thread
// safe and (with measured plans) not deterministic, so we plan with
// FFTW_ESTIMATE once per (size, direction) and serialize execution per plan;
// the data is memcpy'd through the plan-owned buffers.
struct PlanSlot {
    fftw_plan plan = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    size_t n = 0;
    std::mutex mtx;

    void init(size_t size, int sign) {
        n = size;
        in = fftw_alloc_complex(n);
        out = fftw_alloc_complex(n);
        plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE);
        if (!plan) throw Error("FFTW plan creation failed for size " + std::to_string(n));
    }
    ~PlanSlot() {
        if (plan) fftw_destroy_plan(plan);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }

    void execute(const cplx* src, cplx* dst) {
        std::lock_guard<std::mutex> lock(mtx);
        // std::complex<double> is layout-compatible with fftw_complex (double[2]).
        std::memcpy(static_cast<void*>(in), static_cast<const void*>(src), n * sizeof(cplx));
        fftw_execute(plan);
        std::memcpy(static_cast<void*>(dst), static_cast<const void*>(out), n * sizeof(cplx));
    }
};

PlanSlot& plan_for(size_t n, int sign) {
    static std::mutex registry_mtx;
    static std::map<std::pair<size_t, int>, std::unique_ptr<PlanSlot>> registry;
    std::lock_guard<std::mutex> lock(registry_mtx);
    auto& slot = registry[{n, sign}];
    if (!slot) {
        slot = std::make_unique<PlanSlot>();
        slot->init(n, sign);
    }
    return *slot;
}

void check_oversample(int os) {
    if (os < 1 || os > 64) throw ParamError("oversample factor must be in [1, 64], got " + std::to_string(os));
}

// Spread FFT-order coefficients of an N-mode field into an Ns-point FFT buffer
// (Ns = os*N), zero padding the middle. Nyquist of the source is dropped.
std::vector<cplx> pad_coeffs(const SpectralField& u, size_t ns) {
    const int N = u.size();
    std::vector<cplx> buf(ns, cplx{0.0, 0.0});
    for (int n = 0; n <= N / 2 - 1; ++n) buf[static_cast<size_t>(n)] = u.mode(n);
    for (int n = -1; n >= -(N / 2 - 1); --n) buf[ns + static_cast<size_t>(n)] = u.mode(n);
    return buf;
}

} // namespace

std::vector<cplx> to_physical_complex(const SpectralField& u, int oversample) {
    check_oversample(oversample);
    const size_t ns = static_cast<size_t>(u.size()) * static_cast<size_t>(oversample);
    std::vector<cplx> coeff = pad_coeffs(u, ns);
    std::vector<cplx> out(ns);
    // Synthesis sum_n c_n e^{+2 pi i n j / Ns} is FFTW's BACKWARD transform, unnormalized.
    plan_for(ns, FFTW_BACKWARD).execute(coeff.data(), out.data());
    return out;
}

std::vector<double> to_physical(const SpectralField& u, int oversample, double reality_tol) {
    if (!u.is_real(reality_tol))
        throw PreconditionError("to_physical: field is not real (hermitian defect " +
                                std::to_string(u.reality_defect()) + ")");
    auto z = to_physical_complex(u, oversample);
    std::vector<double> out(z.size());
    for (size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
    return out;
}

SpectralField from_physical_complex(const Grid& g, std::span<const cplx> samples) {
    const size_t ns = samples.size();
    if (ns == 0 || ns % static_cast<size_t>(g.num_modes) != 0)
        throw ParamError("from_physical: sample count " + std::to_string(ns) +
                         " is not a positive multiple of num_modes " + std::to_string(g.num_modes));
    std::vector<cplx> coeff(ns);
    plan_for(ns, FFTW_FORWARD).execute(samples.data(), coeff.data());
    SpectralField u(g);
    const double inv = 1.0 / static_cast<double>(ns);
    const int K = g.num_modes / 2 - 1;
    for (int n = 0; n <= K; ++n) u.set_mode(n, inv * coeff[static_cast<size_t>(n)]);
    for (int n = -1; n >= -K; --n) u.set_mode(n, inv * coeff[ns + static_cast<size_t>(n)]);
    // Nyquist stays zero by construction.
    return u;
}

SpectralField from_physical(const Grid& g, std::span<const double> samples) {
    std::vector<cplx> z(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) z[i] = cplx{samples[i], 0.0};
    SpectralField u = from_physical_complex(g, z);
    return u;
}

SpectralField multiply(const SpectralField& a, const SpectralField& b, int oversample) {
    a.check_same_grid(b);
    if (oversample < 2)
        throw ParamError("multiply: oversample must be >= 2 for an alias-free quadratic product");
    auto pa = to_physical_complex(a, oversample);
    auto pb = to_physical_complex(b, oversample);
    for (size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return from_physical_complex(a.grid(), pa);
}

SpectralField complex_exp(const SpectralField& f, double scale, int oversample) {
    if (!f.is_real(1e-10))
        throw PreconditionError("complex_exp: phase field must be real");
    auto p = to_physical_complex(f, oversample);
    for (auto& z : p) z = std::polar(1.0, scale * z.real());
    return from_physical_complex(f.grid(), p);
}

} // namespace bolab
