// analytic.hpp — Closed-form oracles: the exact single-central-spin solution,
// the bosonized (Tavis-Cummings) limit, the single-bath-spin case, and the
// universal maximization constants of sin^2(x)/x.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "spinbatt/dynamics.hpp"
#include "spinbatt/model.hpp"
#include "spinbatt/optimize.hpp"

namespace spinbatt::analytic {

// Global maximizer and maximum of f(x) = sin^2(x)/x on (0, pi). These are
// the exact values behind the familiar two-digit 0.72 / 1.16 charging
// constants; downstream code always consumes them at full precision.
struct SincSqMax {
    double x_star;
    double c_star;
};

inline SincSqMax sinc_sq_max() {
    static const SincSqMax cached = [] {
        auto f = [](double x) {
            const double s = std::sin(x);
            return s * s / x;
        };
        // Dense scan to bracket the peak, then golden section to 1e-12 in x.
        const double pi = std::acos(-1.0);
        const int n = 4096;
        int best = 1;
        double best_f = 0.0;
        for (int i = 1; i < n; ++i) {
            const double fx = f(i * pi / n);
            if (fx > best_f) {
                best_f = fx;
                best = i;
            }
        }
        const double a = (best - 1) * pi / n;
        const double b = (best + 1) * pi / n;
        auto [x, fx] = golden_max(f, a, b, 1e-12);
        // Golden section stalls near the flat top where neighbouring values
        // agree to machine precision; polish the stationary point
        // x sin(2x) = sin^2(x) by Newton steps inside the bracket.
        for (int it = 0; it < 4; ++it) {
            const double s = std::sin(x);
            const double g = x * std::sin(2.0 * x) - s * s;
            const double dg = 2.0 * x * std::cos(2.0 * x);
            const double next = x - g / dg;
            if (!(next > a && next < b)) break;
            x = next;
        }
        fx = f(x);
        return SincSqMax{x, fx};
    }();
    return cached;
}

// Effective two-level parameters of the N_B = 1 problem in the sector
// spanned by |down, n> and |up, n-1>.
struct SingleSpinRabi {
    double delta_n;  // detuning B - h + (2n - 1 - N) * delta
    double omega_n;  // generalized Rabi frequency
    double b;        // ladder coefficient b_{N,n}

    static SingleSpinRabi from(const ModelParams& p, int n) {
        if (p.N_B != 1)
            throw std::domain_error("single-spin oracle requires N_B = 1");
        if (n < 1 || n > p.N)
            throw std::domain_error("single-spin oracle requires 1 <= n <= N");
        SingleSpinRabi r;
        r.b = b_coeff(p.N, n);
        r.delta_n = p.B - p.h + (2.0 * n - 1.0 - p.N) * p.delta;
        r.omega_n = std::sqrt(r.delta_n * r.delta_n + 4.0 * r.b * p.A * p.A);
        return r;
    }
};

// Probability amplitudes of |up, n-1> and |down, n> at time t, starting from
// |down, n>. The global phase is dropped. A frozen two-level problem
// (omega_n = 0) leaves the initial state untouched.
inline std::pair<Complex, Complex> single_spin_amplitudes(const ModelParams& p, int n,
                                                          double t) {
    const SingleSpinRabi r = SingleSpinRabi::from(p, n);
    if (r.omega_n == 0.0) return {Complex(0.0, 0.0), Complex(1.0, 0.0)};
    const double half = 0.5 * r.omega_n * t;
    const double s = std::sin(half);
    const double c = std::cos(half);
    const Complex p_up(0.0, -2.0 * std::sqrt(r.b) * p.A / r.omega_n * s);
    const Complex p_down(c, r.delta_n / r.omega_n * s);
    return {p_up, p_down};
}

// Battery, charger and interaction energies for the N_B = 1 evolution.
inline Energies single_spin_energies(const ModelParams& p, int n, double t) {
    const SingleSpinRabi r = SingleSpinRabi::from(p, n);
    double transfer = 0.0;  // 4 b A^2 / Omega^2 * sin^2(Omega t / 2)
    if (r.omega_n > 0.0) {
        const double s = std::sin(0.5 * r.omega_n * t);
        transfer = 4.0 * r.b * p.A * p.A / (r.omega_n * r.omega_n) * s * s;
    }
    Energies e;
    e.E_B = p.B * (transfer - 0.5);
    e.E_C = p.h * ((n - 0.5 * p.N) - transfer);
    e.E_I = p.delta * (0.5 * p.N - n) - (p.B - p.h) * transfer;
    return e;
}

// Closed-form charging maxima for N_B = 1. On resonance (delta_n = 0) the
// transfer is complete: E_max = B at pi/(2 A sqrt(b)) and
// P_max = c* B A sqrt(b) at x*/(A sqrt(b)). Off resonance the power curve
// (4 b A^2/Omega^2) sin^2(Omega t/2)/t is maximized by bracketed search on
// (0, 2 pi/Omega]. A = 0 transfers nothing.
inline ChargingSummary single_spin_summary(const ModelParams& p, int n) {
    const SingleSpinRabi r = SingleSpinRabi::from(p, n);
    ChargingSummary out;
    if (p.A == 0.0 || r.b == 0.0 || p.B <= 0.0) {
        // No transfer, or a battery that can only discharge: the running
        // maximum of ΔE_B(t) stays at its t = 0 value of zero.
        return out;
    }
    const auto [x_star, c_star] = sinc_sq_max();
    const double a = std::abs(p.A);
    const double amplitude = 4.0 * r.b * p.A * p.A / (r.omega_n * r.omega_n);
    out.E_max = p.B * amplitude;
    out.t_at_Emax = std::acos(-1.0) / r.omega_n;
    if (r.delta_n == 0.0) {
        out.P_max = c_star * p.B * a * std::sqrt(r.b);
        out.t_at_Pmax = x_star / (a * std::sqrt(r.b));
    } else {
        auto power = [&](double t) {
            const double s = std::sin(0.5 * r.omega_n * t);
            return p.B * amplitude * s * s / t;
        };
        const double period = 2.0 * std::acos(-1.0) / r.omega_n;
        auto [t_best, p_best] = golden_max(power, 1e-12 * period, period, 1e-12 * period);
        out.P_max = p_best;
        out.t_at_Pmax = t_best;
    }
    out.horizon = std::max(out.t_at_Emax, out.t_at_Pmax);
    out.samples = 0;
    return out;
}

// Bosonized-limit transferred energy B (n - m) sin^2(A sqrt(N_B N) t),
// valid deep in the N, N_B >> 1 regime; callers probe its accuracy.
inline double tc_energy(const ModelParams& p, const InitialState& s0, double t) {
    const double lambda = p.A * std::sqrt(static_cast<double>(p.N_B) * p.N);
    const double s = std::sin(lambda * t);
    return p.B * (s0.n - s0.m) * s * s;
}

// Witness (m - n) cos(2 A sqrt(N_B N) t) of the boson-number difference,
// exposed so the commutator-series evolution behind tc_energy can be probed
// independently through <b†b> = (N_tot + F)/2 with N_tot = m + n.
inline double tc_f_witness(const ModelParams& p, const InitialState& s0, double t) {
    const double lambda = p.A * std::sqrt(static_cast<double>(p.N_B) * p.N);
    return (s0.m - s0.n) * std::cos(2.0 * lambda * t);
}

struct PowerPoint {
    double P_max = 0.0;
    double t_star = 0.0;
};

// Peak power of the bosonized limit: c* B A sqrt(N_B N) (n - m) at
// x*/(A sqrt(N_B N)); with n - m = N_B this is c* B A sqrt(N) N_B^{3/2}.
inline PowerPoint tc_pmax(const ModelParams& p, const InitialState& s0) {
    const double lambda = std::abs(p.A) * std::sqrt(static_cast<double>(p.N_B) * p.N);
    if (lambda == 0.0 || p.B * (s0.n - s0.m) <= 0.0) return {};
    const auto [x_star, c_star] = sinc_sq_max();
    PowerPoint out;
    out.P_max = c_star * p.B * lambda * (s0.n - s0.m);
    out.t_star = x_star / lambda;
    return out;
}

// Single-bath-spin (N = 1) lower-bound case, initial |m, up>: the dynamics
// is an exact two-level problem with Rabi element sqrt(b_{N_B, m+1}), so
// P_max = c* B A sqrt(b_{N_B, m+1}); m = 0 gives the sqrt(N_B) law.
inline PowerPoint single_bath_summary(const ModelParams& p, int m) {
    if (p.N != 1) throw std::domain_error("single-bath oracle requires N = 1");
    if (m < 0 || m > p.N_B - 1)
        throw std::domain_error("single-bath oracle requires 0 <= m <= N_B - 1");
    const double root_b = std::sqrt(b_coeff(p.N_B, m + 1));
    const double a = std::abs(p.A);
    if (a == 0.0 || p.B <= 0.0) return {};
    const auto [x_star, c_star] = sinc_sq_max();
    PowerPoint out;
    out.P_max = c_star * p.B * a * root_b;
    out.t_star = x_star / (a * root_b);
    return out;
}

}  // namespace spinbatt::analytic
