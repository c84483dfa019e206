#include "qhe/cycle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace qhe {

namespace {

// Run fn(i) for i in [0, count) on `threads` workers; exceptions are caught
// inside fn. Output slots are pre-allocated so assembly order is fixed.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn)
{
    threads = std::max(1, threads);
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_workers = std::min<std::size_t>(threads, count);
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

void TbaCycleSpec::validate() const
{
    if (!(c_A > 0.0 && c_B > 0.0)) throw InvalidInput("TbaCycleSpec: couplings must be > 0");
    if (!(c_A <= c_B)) throw InvalidInput("TbaCycleSpec: requires c_A <= c_B");
    if (!(T_A > 0.0 && T_C > 0.0))
        throw InvalidInput("TbaCycleSpec: temperatures must be > 0");
    if (!(T_A < T_C)) throw InvalidInput("TbaCycleSpec: requires T_A < T_C");
    if (!(density > 0.0)) throw InvalidInput("TbaCycleSpec: density must be > 0");
    if (!(box_length > 0.0)) throw InvalidInput("TbaCycleSpec: box_length must be > 0");
}

double match_entropy_temperature(double c_target, double s_target, double n,
                                 std::pair<double, double> T_bracket,
                                 const GridConfig& grid)
{
    if (!(s_target > 0.0))
        throw InvalidInput("match_entropy_temperature: entropy target must be > 0");

    std::optional<double> mu_hint;
    auto entropy_gap = [&](double T) {
        const double mu = mu_from_density(c_target, n, T, grid, mu_hint);
        mu_hint = mu;
        return thermo_state(c_target, mu, T, grid).entropy_density - s_target;
    };

    double lo = std::min(T_bracket.first, T_bracket.second);
    double hi = std::max(T_bracket.first, T_bracket.second);
    if (!(lo > 0.0)) throw InvalidInput("match_entropy_temperature: bracket must be > 0");

    // s is increasing in T at fixed (c, n); expand until the bracket straddles.
    double f_lo = entropy_gap(lo);
    double f_hi = entropy_gap(hi);
    for (int i = 0; i < 10 && f_lo > 0.0; ++i) {
        hi = lo;
        f_hi = f_lo;
        lo /= 2.0;
        f_lo = entropy_gap(lo);
    }
    for (int i = 0; i < 10 && f_hi < 0.0; ++i) {
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = entropy_gap(hi);
    }
    if (f_lo > 0.0 || f_hi < 0.0)
        throw MatchingError("match_entropy_temperature: no sign change after expansion");

    const double tol = 1e-9 * s_target;
    if (std::abs(f_lo) <= tol) return lo;
    if (std::abs(f_hi) <= tol) return hi;

    // Secant safeguarded by the bracket.
    double x = lo, fx = f_lo, x_prev = hi, f_prev = f_hi;
    for (int i = 0; i < 200; ++i) {
        double x_new = (fx != f_prev) ? x - fx * (x - x_prev) / (fx - f_prev)
                                      : 0.5 * (lo + hi);
        if (!(x_new > lo && x_new < hi)) x_new = 0.5 * (lo + hi);
        const double f_new = entropy_gap(x_new);
        if (std::abs(f_new) <= tol) return x_new;
        if (f_new < 0.0)
            lo = x_new;
        else
            hi = x_new;
        x_prev = x;
        f_prev = fx;
        x = x_new;
        fx = f_new;
        if (hi - lo <= 1e-14 * hi) return 0.5 * (lo + hi);
    }
    throw MatchingError("match_entropy_temperature: refinement did not converge");
}

CycleResult run_tba_cycle(const TbaCycleSpec& spec, const GridConfig& grid)
{
    spec.validate();
    const double n = spec.density;
    const double L = spec.box_length;

    const double mu_A = mu_from_density(spec.c_A, n, spec.T_A, grid);
    const ThermoState st_A = thermo_state(spec.c_A, mu_A, spec.T_A, grid);
    const double mu_C = mu_from_density(spec.c_B, n, spec.T_C, grid, mu_A);
    const ThermoState st_C = thermo_state(spec.c_B, mu_C, spec.T_C, grid);

    double T_B, T_D;
    if (spec.c_A == spec.c_B) {
        T_B = spec.T_A;
        T_D = spec.T_C;
    } else {
        T_B = match_entropy_temperature(spec.c_B, st_A.entropy_density, n,
                                        {spec.T_A / 3.0, 3.0 * spec.T_A}, grid);
        T_D = match_entropy_temperature(spec.c_A, st_C.entropy_density, n,
                                        {spec.T_C / 3.0, 3.0 * spec.T_C}, grid);
    }

    const double mu_B = mu_from_density(spec.c_B, n, T_B, grid, mu_A);
    const ThermoState st_B = thermo_state(spec.c_B, mu_B, T_B, grid);
    const double mu_D = mu_from_density(spec.c_A, n, T_D, grid, mu_C);
    const ThermoState st_D = thermo_state(spec.c_A, mu_D, T_D, grid);

    CycleResult result;
    result.Q2 = L * (st_C.energy_density - st_B.energy_density);
    result.Q4 = L * (st_D.energy_density - st_A.energy_density);
    result.work = result.Q2 - result.Q4;
    result.T_B = T_B;
    result.T_D = T_D;

    if (spec.c_A == spec.c_B) {
        result.efficiency = 0.0;
    } else {
        if (!(result.Q2 > 0.0)) throw NotAnEngine("run_tba_cycle: Q2 <= 0");
        result.efficiency = 1.0 - result.Q4 / result.Q2;
    }
    return result;
}

std::vector<DensityScanRow> density_scan(const TbaCycleSpec& base,
                                         const std::vector<double>& n_values,
                                         const GridConfig& grid, int threads)
{
    std::vector<DensityScanRow> rows(n_values.size());
    parallel_for(n_values.size(), threads, [&](std::size_t i) {
        DensityScanRow& row = rows[i];
        row.density = n_values[i];
        try {
            TbaCycleSpec spec = base;
            spec.density = n_values[i];
            const CycleResult r = run_tba_cycle(spec, grid);
            row.efficiency = r.efficiency;
            row.work_per_particle = r.work / (spec.density * spec.box_length);
            row.ok = true;
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return rows;
}

std::vector<PhaseMapPoint> phase_map(double c, std::pair<double, double> mu_range,
                                     std::pair<double, double> T_range,
                                     std::pair<int, int> resolution,
                                     const GridConfig& grid, int threads)
{
    const int n_mu = resolution.first;
    const int n_T = resolution.second;
    if (n_mu < 1 || n_T < 1) throw InvalidInput("phase_map: resolution must be >= 1");
    if (!(T_range.first > 0.0 && T_range.second > 0.0))
        throw InvalidInput("phase_map: temperatures must be > 0");

    auto linspace_at = [](std::pair<double, double> r, int count, int i) {
        return count == 1 ? r.first
                          : r.first + (r.second - r.first) * i / (count - 1);
    };

    std::vector<PhaseMapPoint> cells(static_cast<std::size_t>(n_mu) * n_T);
    parallel_for(cells.size(), threads, [&](std::size_t idx) {
        const int i_T = static_cast<int>(idx) / n_mu;   // T outer
        const int i_mu = static_cast<int>(idx) % n_mu;  // mu inner
        PhaseMapPoint& cell = cells[idx];
        cell.chemical_potential = linspace_at(mu_range, n_mu, i_mu);
        cell.temperature = linspace_at(T_range, n_T, i_T);
        try {
            const ThermoState st =
                thermo_state(c, cell.chemical_potential, cell.temperature, grid);
            cell.density = st.density;
            cell.entropy_density = st.entropy_density;
            cell.specific_heat =
                specific_heat(c, cell.chemical_potential, cell.temperature, grid);
            cell.ok = true;
        } catch (const Error& e) {
            cell.error = e.what();
        }
    });
    return cells;
}

std::vector<CycleCorner> cycle_trajectory(const TbaCycleSpec& spec, const GridConfig& grid)
{
    const CycleResult r = run_tba_cycle(spec, grid);
    const double n = spec.density;

    std::vector<CycleCorner> corners(4);
    corners[0] = {'A', mu_from_density(spec.c_A, n, spec.T_A, grid), spec.T_A};
    corners[1] = {'B', mu_from_density(spec.c_B, n, *r.T_B, grid), *r.T_B};
    corners[2] = {'C', mu_from_density(spec.c_B, n, spec.T_C, grid), spec.T_C};
    corners[3] = {'D', mu_from_density(spec.c_A, n, *r.T_D, grid), *r.T_D};
    return corners;
}

}  // namespace qhe
