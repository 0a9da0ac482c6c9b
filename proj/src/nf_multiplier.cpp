#include "bolab/normalform.hpp"

#include <cmath>
#include <string>

#include "bolab/errors.hpp"
#include "nf_internal.hpp"

namespace bolab::nf {

// --- resonance phases --------------------------------------------------------

long long omega(long long xi, long long xi1, long long xi2) {
    auto w = [](long long x) { return x * std::llabs(x); };
    return w(xi) - w(xi1) - w(xi2);
}

double omega(double xi, double xi1, double xi2) {
    auto w = [](double x) { return x * std::abs(x); };
    return w(xi) - w(xi1) - w(xi2);
}

namespace {
void check_j(int j) {
    if (j < 1 || j > 3) throw ParamError("omega2/omega3: family index j must be 1, 2, or 3");
}
void check_k(int k) {
    if (k < 1 || k > 3) throw ParamError("omega3: slot index k must be 1, 2, or 3");
}
} // namespace

long long omega2(int j, long long xi, long long xi1, long long xi2, long long xi3) {
    check_j(j);
    if (j == 1) return omega(xi, xi1 + xi2, xi3) + omega(xi1 + xi2, xi1, xi2);
    return omega(xi, xi1, xi2 + xi3) + omega(xi2 + xi3, xi2, xi3);
}

double omega2(int j, double xi, double xi1, double xi2, double xi3) {
    check_j(j);
    if (j == 1) return omega(xi, xi1 + xi2, xi3) + omega(xi1 + xi2, xi1, xi2);
    return omega(xi, xi1, xi2 + xi3) + omega(xi2 + xi3, xi2, xi3);
}

long long omega3(int j, int k, long long xi, long long xi1, long long xi2, long long xi3,
                 long long xi4) {
    check_j(j);
    check_k(k);
    if (k == 1) return omega2(j, xi, xi1 + xi2, xi3, xi4) + omega(xi1 + xi2, xi1, xi2);
    if (k == 2) return omega2(j, xi, xi1, xi2 + xi3, xi4) + omega(xi2 + xi3, xi2, xi3);
    return omega2(j, xi, xi1, xi2, xi3 + xi4) + omega(xi3 + xi4, xi3, xi4);
}

double omega3(int j, int k, double xi, double xi1, double xi2, double xi3, double xi4) {
    check_j(j);
    check_k(k);
    if (k == 1) return omega2(j, xi, xi1 + xi2, xi3, xi4) + omega(xi1 + xi2, xi1, xi2);
    if (k == 2) return omega2(j, xi, xi1, xi2 + xi3, xi4) + omega(xi2 + xi3, xi2, xi3);
    return omega2(j, xi, xi1, xi2, xi3 + xi4) + omega(xi3 + xi4, xi3, xi4);
}

double sigma(double xi, double xi1, double xi2, DomainMode mode) {
    return detail::sigma_k(xi, xi1, xi2, mode);
}

// --- term metadata -----------------------------------------------------------

int arity(Term id) {
    switch (id) {
    case Term::N1: case Term::N1_leM: case Term::N1_gtM: case Term::N1_0:
    case Term::E: case Term::N1_0_E:
        return 2;
    case Term::N2_full: case Term::N2_leM:
    case Term::N2_1: case Term::N2_2: case Term::N2_3:
    case Term::N2_10: case Term::N2_20: case Term::N2_30:
    case Term::N2_10_E: case Term::N2_20_E: case Term::N2_30_E:
        return 3;
    default:
        return 4;
    }
}

const char* term_name(Term id) {
    switch (id) {
    case Term::N1: return "N1";
    case Term::N1_leM: return "N1_leM";
    case Term::N1_gtM: return "N1_gtM";
    case Term::N1_0: return "N1_0";
    case Term::N2_full: return "N2_full";
    case Term::N2_leM: return "N2_leM";
    case Term::N2_1: return "N2_1";
    case Term::N2_2: return "N2_2";
    case Term::N2_3: return "N2_3";
    case Term::N2_10: return "N2_10";
    case Term::N2_20: return "N2_20";
    case Term::N2_30: return "N2_30";
    case Term::N3_11: return "N3_11";
    case Term::N3_12: return "N3_12";
    case Term::N3_13: return "N3_13";
    case Term::N3_21: return "N3_21";
    case Term::N3_22: return "N3_22";
    case Term::N3_23: return "N3_23";
    case Term::N3_31: return "N3_31";
    case Term::N3_32: return "N3_32";
    case Term::N3_33: return "N3_33";
    case Term::E: return "E";
    case Term::N1_0_E: return "N1_0_E";
    case Term::N2_10_E: return "N2_10_E";
    case Term::N2_20_E: return "N2_20_E";
    case Term::N2_30_E: return "N2_30_E";
    }
    return "?";
}

bool is_boundary(Term id) {
    switch (id) {
    case Term::N1_0: case Term::N2_10: case Term::N2_20: case Term::N2_30:
    case Term::N1_0_E: case Term::N2_10_E: case Term::N2_20_E: case Term::N2_30_E:
        return true;
    default:
        return false;
    }
}

namespace detail {

bool uses_M(Term id) {
    return id != Term::N1 && id != Term::E;
}

// Terms whose kernel divides by a resonance phase protected only by |Omega|>M.
bool divides_by_phase(Term id) {
    if (is_boundary(id)) return true;
    switch (id) {
    case Term::N3_11: case Term::N3_12: case Term::N3_13:
    case Term::N3_21: case Term::N3_22: case Term::N3_23:
    case Term::N3_31: case Term::N3_32: case Term::N3_33:
        return true;
    default:
        return false;
    }
}

void check_M(Term id, double M) {
    if (!uses_M(id)) return;
    if (!std::isfinite(M)) throw ParamError(std::string(term_name(id)) + ": M must be finite");
    if (divides_by_phase(id)) {
        if (M < 1.0)
            throw ParamError(std::string(term_name(id)) +
                             ": M >= 1 required for kernels dividing by the phase");
    } else if (M < 0.0) {
        throw ParamError(std::string(term_name(id)) + ": M must be nonnegative");
    }
}

} // namespace detail

// --- pointwise evaluations ----------------------------------------------------

cplx multiplier_value(Term id, std::span<const double> freqs, double M, MultForm form,
                      DomainMode mode) {
    const int ar = arity(id);
    if (static_cast<int>(freqs.size()) != ar + 1)
        throw ParamError(std::string(term_name(id)) + ": expected " + std::to_string(ar + 1) +
                         " frequencies (output first), got " + std::to_string(freqs.size()));
    detail::check_M(id, M);
    const double x3 = ar >= 3 ? freqs[3] : 0.0;
    const double x4 = ar >= 4 ? freqs[4] : 0.0;
    return detail::kernel_eval(id, freqs[0], freqs[1], freqs[2], x3, x4, M, form, mode);
}

double phase_value(Term id, std::span<const double> freqs) {
    const int ar = arity(id);
    if (static_cast<int>(freqs.size()) != ar + 1)
        throw ParamError(std::string(term_name(id)) + ": expected " + std::to_string(ar + 1) +
                         " frequencies (output first), got " + std::to_string(freqs.size()));
    const double x3 = ar >= 3 ? freqs[3] : 0.0;
    const double x4 = ar >= 4 ? freqs[4] : 0.0;
    return detail::phase_eval(id, freqs[0], freqs[1], freqs[2], x3, x4);
}

} // namespace bolab::nf
