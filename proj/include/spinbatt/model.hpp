// model.hpp — Collective-spin bookkeeping: model parameters, ladder-operator
// coefficients, and conserved-excitation sectors.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace spinbatt {

// Physical couplings and system sizes. Energies are in units of the exchange
// coupling unless stated otherwise; A = 1 is the natural rescaled unit.
struct ModelParams {
    double A = 1.0;      // battery-charger exchange coupling
    double B = 1.0;      // battery field
    double h = 1.0;      // charger field
    double delta = 0.0;  // Ising anisotropy
    int N_B = 1;         // number of battery spins
    int N = 1;           // number of bath (charger) spins
};

inline bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.A == b.A && a.B == b.B && a.h == b.h && a.delta == b.delta &&
           a.N_B == b.N_B && a.N == b.N;
}

inline void validate(const ModelParams& p) {
    if (p.N_B < 1) throw std::domain_error("N_B must be >= 1");
    if (p.N < 1) throw std::domain_error("N must be >= 1");
    if (!std::isfinite(p.A)) throw std::domain_error("A must be finite");
    if (!std::isfinite(p.B)) throw std::domain_error("B must be finite");
    if (!std::isfinite(p.h)) throw std::domain_error("h must be finite");
    if (!std::isfinite(p.delta)) throw std::domain_error("delta must be finite");
}

// Product initial state |m, n>: m battery excitations, n charger excitations.
struct InitialState {
    int m = 0;
    int n = 0;
};

inline void validate(const InitialState& s, const ModelParams& p) {
    if (s.m < 0 || s.m > p.N_B) throw std::domain_error("m0 must be in [0, N_B]");
    if (s.n < 0 || s.n > p.N) throw std::domain_error("n0 must be in [0, N]");
}

// Squared collective ladder matrix element k(L-k+1). Vanishes at k = 0 and
// k = L+1, where the ladder annihilates the edge states. Formed in exact
// integer arithmetic before conversion to double.
inline double b_coeff(int L, int k) {
    if (k < 0 || k > L + 1)
        throw std::domain_error("b_coeff: k must be in [0, L+1], got k=" + std::to_string(k));
    return static_cast<double>(static_cast<std::int64_t>(k) * (L - k + 1));
}

// Integer argmax of b_coeff(L, .) on [1, L]. Returns {lo, hi}; the two
// coincide for odd L and differ by one for even L (b is symmetric about
// (L+1)/2, so both integers neighbouring the real maximum are optimal).
inline std::pair<int, int> b_argmax(int L) {
    if (L < 1) throw std::domain_error("b_argmax: L must be >= 1");
    if (L % 2 == 1) {
        int k = (L + 1) / 2;
        return {k, k};
    }
    return {L / 2, L / 2 + 1};
}

// Basis of states |m, K-m> at fixed total excitation K = m + n. The
// flip-flop coupling only connects (m, n) <-> (m±1, n∓1), so K labels an
// invariant block; dynamics from a product state never leaves its sector.
struct ExcitationSector {
    int K = 0;
    int m_min = 0;
    int m_max = 0;
    int dim = 1;
    ModelParams params;

    int m_of(int i) const { return m_min + i; }
    int n_of(int i) const { return K - m_min - i; }
    int index_of(int m) const { return m - m_min; }
};

inline bool same_sector(const ExcitationSector& a, const ExcitationSector& b) {
    return a.K == b.K && a.m_min == b.m_min && a.dim == b.dim && a.params == b.params;
}

inline ExcitationSector build_sector(const ModelParams& p, int K) {
    validate(p);
    if (K < 0 || K > p.N_B + p.N)
        throw std::domain_error("sector K must be in [0, N_B + N], got K=" + std::to_string(K));
    ExcitationSector s;
    s.K = K;
    s.m_min = std::max(0, K - p.N);
    s.m_max = std::min(p.N_B, K);
    s.dim = s.m_max - s.m_min + 1;
    s.params = p;
    return s;
}

inline ExcitationSector sector_of(const ModelParams& p, const InitialState& s0) {
    validate(s0, p);
    return build_sector(p, s0.m + s0.n);
}

}  // namespace spinbatt
