// optimize.hpp — Bracketed scalar maximization (golden-section search).

#pragma once

#include <cmath>
#include <utility>

namespace spinbatt {

// Maximize f on [a, b], assuming a single interior maximum, until the
// bracket width falls below xtol. Returns (x, f(x)) at the best evaluated
// point; endpoints are never evaluated.
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double xtol) {
    constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    int guard = 300;
    while (b - a > xtol && guard-- > 0) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace spinbatt
