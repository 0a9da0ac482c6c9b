#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bolab/grid.hpp"

namespace bolab {

using cplx = std::complex<double>;

// A field known by its Fourier coefficients. Storage is FFT order
// (n = 0, 1, ..., N/2-1, -N/2, ..., -1) so the buffer can be handed to FFTW
// directly; use mode(n) for centered access. Reality is a *property* of the
// data (mode(-n) == conj(mode(n))), not a type: gauge fields are genuinely
// complex, so functions that need a real input validate it at the call site.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid_(g), c_(static_cast<size_t>(g.num_modes), cplx{0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.num_modes; }

    // Centered accessor, n in [-N/2, N/2-1]. Out-of-range reads return 0
    // (convolution loops lean on this); out-of-range writes are an error.
    cplx mode(int n) const {
        const int N = grid_.num_modes;
        if (n < -N / 2 || n > N / 2 - 1) return {0.0, 0.0};
        return c_[static_cast<size_t>(n >= 0 ? n : n + N)];
    }
    void set_mode(int n, cplx v) {
        const int N = grid_.num_modes;
        if (n < -N / 2 || n > N / 2 - 1)
            throw ParamError("SpectralField::set_mode: index " + std::to_string(n) +
                             " outside [-N/2, N/2-1] for N = " + std::to_string(N));
        c_[static_cast<size_t>(n >= 0 ? n : n + N)] = v;
    }

    // Raw FFT-order buffer (index k <-> mode k for k < N/2, k - N for k >= N/2).
    cplx* data() { return c_.data(); }
    const cplx* data() const { return c_.data(); }

    cplx mean_coeff() const { return c_.empty() ? cplx{0, 0} : c_[0]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : c_) m = std::max(m, std::abs(z));
        return m;
    }

    bool all_finite() const {
        for (const auto& z : c_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    // Hermitian-symmetry defect, relative to the field size. Zero field counts as real.
    double reality_defect() const {
        const int N = grid_.num_modes;
        double worst = 0.0;
        worst = std::max(worst, std::abs(c_[0].imag()));
        for (int n = 1; n <= N / 2 - 1; ++n)
            worst = std::max(worst, std::abs(mode(n) - std::conj(mode(-n))));
        const double scale = max_abs();
        return scale > 0.0 ? worst / scale : worst;
    }
    bool is_real(double tol = 1e-12) const { return reality_defect() <= tol; }

    // Force exact Hermitian symmetry (averages the (n, -n) pairs). Also zeroes Nyquist.
    void enforce_reality() {
        const int N = grid_.num_modes;
        c_[0] = cplx{c_[0].real(), 0.0};
        for (int n = 1; n <= N / 2 - 1; ++n) {
            const cplx avg = 0.5 * (mode(n) + std::conj(mode(-n)));
            set_mode(n, avg);
            set_mode(-n, std::conj(avg));
        }
        c_[static_cast<size_t>(N / 2)] = {0.0, 0.0};
    }

    void zero_nyquist() { c_[static_cast<size_t>(grid_.num_modes / 2)] = {0.0, 0.0}; }
    bool nyquist_is_zero() const {
        return std::abs(c_[static_cast<size_t>(grid_.num_modes / 2)]) == 0.0;
    }

    // Elementwise helpers used all over the solver / normal-form code.
    SpectralField& operator+=(const SpectralField& o) {
        check_same_grid(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_same_grid(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    SpectralField& operator*=(cplx a) {
        for (auto& z : c_) z *= a;
        return *this;
    }
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(cplx a, SpectralField f) { return f *= a; }

    void check_same_grid(const SpectralField& o) const {
        if (grid_ != o.grid_) throw ParamError("SpectralField: grid mismatch between operands");
    }

private:
    Grid grid_;
    std::vector<cplx> c_;
};

// l2 distance of coefficient vectors (no period weight; see norms.hpp for H^s).
inline double coeff_distance(const SpectralField& a, const SpectralField& b) {
    a.check_same_grid(b);
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
    return std::sqrt(s);
}

inline double coeff_norm(const SpectralField& a) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += std::norm(a.data()[i]);
    return std::sqrt(s);
}

} // namespace bolab
