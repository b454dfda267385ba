// scaling.hpp — (N_B, N) parameter sweeps and log-log least-squares
// extraction of the power-law exponent of the maximum charging power.

#pragma once

#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spinbatt/dynamics.hpp"
#include "spinbatt/model.hpp"

namespace spinbatt::scaling {

// How the charger excitation n0 is chosen per sweep cell.
enum class InitialRule {
    BathFull,      // n0 = N
    BatteryCount,  // n0 = N_B
    Explicit,      // n0 fixed by the caller
};

inline std::string rule_name(InitialRule rule) {
    switch (rule) {
        case InitialRule::BathFull: return "n=N";
        case InitialRule::BatteryCount: return "n=NB";
        case InitialRule::Explicit: return "explicit";
    }
    return "?";
}

inline InitialRule rule_from_name(const std::string& name) {
    if (name == "n=N") return InitialRule::BathFull;
    if (name == "n=NB" || name == "n=N_B") return InitialRule::BatteryCount;
    if (name == "explicit") return InitialRule::Explicit;
    throw std::domain_error("unknown initial rule: " + name);
}

struct SweepRow {
    int N_B = 0;
    int N = 0;
    int n0 = 0;
    int m0 = 0;
    double E_max = 0.0;
    double P_max = 0.0;
    double t_at_Pmax = 0.0;
};

struct FailedCell {
    int N_B = 0;
    int N = 0;
    std::string message;
};

struct SweepResult {
    std::vector<SweepRow> rows;       // N outer, N_B inner ordering
    std::vector<FailedCell> failed;   // cells whose run aborted
};

struct SweepSpec {
    std::vector<int> N_B_values;
    std::vector<int> N_values;
    InitialRule rule = InitialRule::BathFull;
    int m0 = 0;
    int n0 = 0;  // used by InitialRule::Explicit
    RunOptions options;
    int jobs = 1;
};

// One summary row per (N, N_B) cell via run + summarize. A failing cell is
// recorded as missing rather than aborting the sweep. Rows are assembled in
// deterministic (N outer, N_B inner) order for any jobs count.
inline SweepResult sweep(const ModelParams& base, const SweepSpec& spec) {
    struct Cell {
        int N_B;
        int N;
    };
    std::vector<Cell> cells;
    cells.reserve(spec.N_values.size() * spec.N_B_values.size());
    for (int N : spec.N_values)
        for (int N_B : spec.N_B_values) cells.push_back({N_B, N});

    std::vector<std::optional<SweepRow>> slots(cells.size());
    std::vector<std::optional<FailedCell>> failures(cells.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            const Cell cell = cells[i];
            ModelParams params = base;
            params.N_B = cell.N_B;
            params.N = cell.N;
            InitialState initial;
            initial.m = spec.m0;
            switch (spec.rule) {
                case InitialRule::BathFull: initial.n = cell.N; break;
                case InitialRule::BatteryCount: initial.n = cell.N_B; break;
                case InitialRule::Explicit: initial.n = spec.n0; break;
            }
            try {
                const ChargingSummary s = charge_summary(params, initial, spec.options);
                slots[i] = SweepRow{cell.N_B, cell.N,     initial.n, initial.m,
                                    s.E_max,  s.P_max,    s.t_at_Pmax};
            } catch (const std::exception& e) {
                failures[i] = FailedCell{cell.N_B, cell.N, e.what()};
            }
        }
    };

    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1 || cells.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int spawn = std::min<std::size_t>(jobs, cells.size()) - 1;
        pool.reserve(spawn);
        for (int j = 0; j < spawn; ++j) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    SweepResult out;
    out.rows.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (slots[i]) out.rows.push_back(*slots[i]);
        if (failures[i]) out.failed.push_back(*failures[i]);
    }
    return out;
}

struct ScalingFit {
    double alpha = 0.0;     // exponent
    double beta = 0.0;      // prefactor exp(intercept)
    double residual = 0.0;  // RMS of log residuals
    int N = 0;
    std::pair<int, int> fit_range{0, 0};
    int rows_used = 0;
};

// Ordinary least squares of log(P_max) against log(N_B) over rows with
// N_B in [lo, hi]. Rows must share one N and carry positive P_max.
inline ScalingFit fit_power_law(const std::vector<SweepRow>& rows, int lo, int hi) {
    std::vector<double> x;
    std::vector<double> y;
    int n_value = 0;
    for (const SweepRow& row : rows) {
        if (row.N_B < lo || row.N_B > hi) continue;
        if (!(row.P_max > 0.0))
            throw std::domain_error("fit_power_law: P_max must be positive at N_B=" +
                                    std::to_string(row.N_B));
        if (x.empty())
            n_value = row.N;
        else if (row.N != n_value)
            throw std::domain_error("fit_power_law: rows span multiple N; filter first");
        x.push_back(std::log(static_cast<double>(row.N_B)));
        y.push_back(std::log(row.P_max));
    }
    const int count = static_cast<int>(x.size());
    if (count < 3)
        throw std::domain_error("fit_power_law: need at least 3 rows in range, got " +
                                std::to_string(count));

    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < count; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < count; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::domain_error("fit_power_law: degenerate N_B range");

    ScalingFit fit;
    fit.alpha = sxy / sxx;
    const double intercept = my - fit.alpha * mx;
    fit.beta = std::exp(intercept);
    double ss = 0.0;
    for (int i = 0; i < count; ++i) {
        const double r = y[i] - (fit.alpha * x[i] + intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    fit.N = n_value;
    fit.fit_range = {lo, hi};
    fit.rows_used = count;
    return fit;
}

// Convenience filter for tables holding several N values.
inline std::vector<SweepRow> rows_with_N(const std::vector<SweepRow>& rows, int N) {
    std::vector<SweepRow> out;
    for (const SweepRow& row : rows)
        if (row.N == N) out.push_back(row);
    return out;
}

}  // namespace spinbatt::scaling
