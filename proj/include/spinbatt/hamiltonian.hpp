// hamiltonian.hpp — Dense symmetric-tridiagonal sector blocks and their
// eigendecomposition (implicit-shift QL on the tridiagonal).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "spinbatt/model.hpp"

namespace spinbatt {

// Diagonal matrix element w_{mn} = B(m - N_B/2) + h(n - N/2) + 2Δ(m - N_B/2)(n - N/2).
inline double diagonal_energy(const ModelParams& p, int m, int n) {
    if (m < 0 || m > p.N_B) throw std::domain_error("diagonal_energy: m out of [0, N_B]");
    if (n < 0 || n > p.N) throw std::domain_error("diagonal_energy: n out of [0, N]");
    const double sz = m - 0.5 * p.N_B;
    const double jz = n - 0.5 * p.N;
    return p.B * sz + p.h * jz + 2.0 * p.delta * sz * jz;
}

// One sector block of the Hamiltonian. The flip-flop coupling shifts m by
// ±1 within the sector, so the block is symmetric tridiagonal and is stored
// as (diag, off); entry() exposes the dense view.
struct SectorHamiltonian {
    ExcitationSector sector;
    std::vector<double> diag;  // w_{m, K-m}, basis order m = m_min .. m_max
    std::vector<double> off;   // coupling between i and i+1, size dim-1

    double entry(int i, int j) const {
        if (i == j) return diag[static_cast<std::size_t>(i)];
        if (i + 1 == j) return off[static_cast<std::size_t>(i)];
        if (j + 1 == i) return off[static_cast<std::size_t>(j)];
        return 0.0;
    }

    // Row-sum norm, used to scale residual tolerances.
    double inf_norm() const {
        double best = 0.0;
        const int dim = sector.dim;
        for (int i = 0; i < dim; ++i) {
            double row = std::abs(diag[i]);
            if (i > 0) row += std::abs(off[i - 1]);
            if (i + 1 < dim) row += std::abs(off[i]);
            best = std::max(best, row);
        }
        return best;
    }
};

inline SectorHamiltonian build_block(const ModelParams& p, const ExcitationSector& sector) {
    SectorHamiltonian block;
    block.sector = sector;
    block.diag.resize(sector.dim);
    if (sector.dim > 1) block.off.resize(sector.dim - 1);
    for (int i = 0; i < sector.dim; ++i) {
        const int m = sector.m_of(i);
        const int n = sector.n_of(i);
        block.diag[i] = diagonal_energy(p, m, n);
        if (i + 1 < sector.dim)
            block.off[i] = p.A * std::sqrt(b_coeff(p.N_B, m + 1) * b_coeff(p.N, n));
    }
    return block;
}

// QL failed to deplete an off-diagonal within the iteration cap.
struct EigensolveError : std::runtime_error {
    int iterations;
    explicit EigensolveError(int iters)
        : std::runtime_error("tridiagonal QL did not converge after " +
                             std::to_string(iters) + " iterations"),
          iterations(iters) {}
};

struct EigenDecomposition {
    ExcitationSector sector;
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // column-major dim x dim; column k = eigenvector k

    double vec(int i, int k) const {
        return vectors[static_cast<std::size_t>(k) * sector.dim + i];
    }
};

namespace detail {

// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating the
// rotations into z (column-major n x n, preloaded with the identity).
// d holds the diagonal and is overwritten with eigenvalues; e holds the
// subdiagonal in e[0..n-2] with e[n-1] used as scratch. An off-diagonal
// counts as negligible once |e_i| <= eps * (|d_i| + |d_{i+1}|).
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e,
                           std::vector<double>& z, int n) {
    if (n <= 1) return;
    constexpr int max_iter = 50;
    const double eps = std::numeric_limits<double>::epsilon();
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = 0;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == max_iter) throw EigensolveError(iter);
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    double* zi = z.data() + static_cast<std::size_t>(i) * n;
                    double* zj = z.data() + static_cast<std::size_t>(i + 1) * n;
                    for (int k = 0; k < n; ++k) {
                        f = zj[k];
                        zj[k] = s * zi[k] + c * f;
                        zi[k] = c * zi[k] - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

inline EigenDecomposition eigendecompose(const SectorHamiltonian& block) {
    const int n = block.sector.dim;
    EigenDecomposition eig;
    eig.sector = block.sector;
    eig.values = block.diag;

    std::vector<double> e(n, 0.0);
    std::copy(block.off.begin(), block.off.end(), e.begin());

    std::vector<double> z(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k) * n + k] = 1.0;

    detail::tridiagonal_ql(eig.values, e, z, n);

    // Sort ascending, permuting eigenvector columns along.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return eig.values[a] < eig.values[b]; });

    std::vector<double> sorted_values(n);
    std::vector<double> sorted_vectors(z.size());
    for (int k = 0; k < n; ++k) {
        sorted_values[k] = eig.values[perm[k]];
        std::copy_n(z.begin() + static_cast<std::size_t>(perm[k]) * n, n,
                    sorted_vectors.begin() + static_cast<std::size_t>(k) * n);
    }
    eig.values = std::move(sorted_values);
    eig.vectors = std::move(sorted_vectors);
    return eig;
}

}  // namespace spinbatt
