// End-to-end validation suite. Each numbered scenario prints one PASS/FAIL
// line (with measurement details indented below it); the process exits
// nonzero if any scenario fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "qhe/bethe.hpp"
#include "qhe/cycle.hpp"
#include "qhe/gibbs.hpp"
#include "qhe/luttinger.hpp"
#include "qhe/tba.hpp"

using namespace qhe;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void verdict(int index, const std::string& name, bool ok)
{
    std::printf("[%d] %-58s %s\n", index, name.c_str(), ok ? "PASS" : "FAIL");
    if (!ok) ++g_failures;
}

bool expect(bool ok, const char* fmt, ...)
{
    std::va_list args;
    va_start(args, fmt);
    std::printf("      %s ", ok ? "ok  " : "BAD ");
    std::vprintf(fmt, args);
    std::printf("\n");
    va_end(args);
    return ok;
}

// ---------------------------------------------------------------------------
// 1. Finite-N cycle against the analytic strong-coupling efficiency curve.
//    Tolerances are absolute in eta (the relative gap diverges as eta -> 0
//    when c_A -> c_B, so percentage points are the meaningful scale).
bool criterion_finite_n()
{
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    GasSpec gas{5, 1.0, 1.0};

    double prev = 1.0;
    for (double ca : {20.0, 30.0, 40.0, 50.0, 75.0, 100.0, 150.0}) {
        CycleSpec spec{gas, ca, 200.0, 75.0, 150.0};
        const double eta = run_finite_cycle(spec).efficiency;
        const double analytic = strong_coupling_efficiency(ca, 200.0, gas);
        const double dev = std::abs(eta - analytic);
        const double allowed = ca >= 50.0 ? 0.01 : 0.05;
        ok &= expect(eta < prev, "monotone: eta(c_A=%g) = %.6f", ca, eta);
        ok &= expect(dev <= allowed,
                     "analytic agreement at c_A=%g: eta=%.6f analytic=%.6f |diff|=%.4f "
                     "(allowed %.2f)",
                     ca, eta, analytic, dev, allowed);
        prev = eta;
    }

    double lo = 1.0, hi = 0.0;
    for (double ta : {30.0, 75.0, 120.0}) {
        CycleSpec spec{gas, 100.0, 200.0, ta, 150.0};
        const double eta = run_finite_cycle(spec).efficiency;
        lo = std::min(lo, eta);
        hi = std::max(hi, eta);
    }
    ok &= expect((hi - lo) / hi < 0.01,
                 "T_A independence at c_A=100: spread %.3f%% (< 1%%)", 100.0 * (hi - lo) / hi);

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok &= expect(seconds < 120.0, "runtime %.1f s (< 120 s)", seconds);
    return ok;
}

// ---------------------------------------------------------------------------
// 2. Thermodynamic-limit efficiency saturates at 1 - sqrt(c_A/c_B).
bool criterion_saturation()
{
    bool ok = true;
    const double target = weak_coupling_efficiency(1.0, 3.0);
    for (double n : {15.0, 20.0}) {
        TbaCycleSpec spec{1.0, 3.0, 1.0, 5.0, n, 1.0};
        const double eta = run_tba_cycle(spec).efficiency;
        ok &= expect(std::abs(eta - target) <= 0.02,
                     "eta(n=%g) = %.4f vs saturation %.4f (+-0.02)", n, eta, target);
    }
    return ok;
}

// ---------------------------------------------------------------------------
// 3. The work-per-particle maximum of the density scan sits between the
//    specific-heat ridge densities of the cold (c_A, T_A) and hot (c_B, T_C)
//    corners, i.e. at the crossover into the Luttinger-liquid regime.
double ridge_density(double c, double T)
{
    double best_mu = 0.0, best_cv = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double mu = -2.0 * T + 10.0 * T * i / 200.0;
        const double cv = specific_heat(c, mu, T);
        if (cv > best_cv) {
            best_cv = cv;
            best_mu = mu;
        }
    }
    return thermo_state(c, best_mu, T).density;
}

bool criterion_work_maximum()
{
    bool ok = true;
    TbaCycleSpec base{1.0, 3.0, 1.0, 5.0, 1.0, 1.0};
    std::vector<double> ns;
    for (int i = 0; i < 25; ++i) ns.push_back(0.1 * std::pow(23.0 / 0.1, i / 24.0));
    auto rows = density_scan(base, ns, {}, 4);

    std::size_t best = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].ok) return expect(false, "row n=%.3f failed: %s", rows[i].density,
                                       rows[i].error.c_str());
        if (rows[i].work_per_particle > rows[best].work_per_particle) best = i;
    }
    ok &= expect(best > 0 && best + 1 < rows.size(),
                 "interior maximum of W/N at n = %.3f (W/N = %.4f)", rows[best].density,
                 rows[best].work_per_particle);
    // single interior maximum: strictly rising before, strictly falling after
    bool unimodal = true;
    for (std::size_t i = 1; i <= best; ++i)
        unimodal &= rows[i].work_per_particle >= rows[i - 1].work_per_particle - 1e-12;
    for (std::size_t i = best + 1; i < rows.size(); ++i)
        unimodal &= rows[i].work_per_particle <= rows[i - 1].work_per_particle + 1e-12;
    ok &= expect(unimodal, "W/N is unimodal across the scan");

    // refine the grid maximum with a parabola in log n
    double n_star = rows[best].density;
    if (best > 0 && best + 1 < rows.size()) {
        const double x0 = std::log(rows[best - 1].density), x1 = std::log(rows[best].density),
                     x2 = std::log(rows[best + 1].density);
        const double y0 = rows[best - 1].work_per_particle, y1 = rows[best].work_per_particle,
                     y2 = rows[best + 1].work_per_particle;
        const double d2 = y0 - 2.0 * y1 + y2;
        if (d2 < 0.0) n_star = std::exp(x1 - 0.5 * (x2 - x0) / 2.0 * (y2 - y0) / d2);
    }
    const double n_cold = ridge_density(base.c_A, base.T_A);
    const double n_hot = ridge_density(base.c_B, base.T_C);
    ok &= expect(std::abs(n_star - n_cold) / n_cold <= 0.10,
                 "refined maximum n = %.3f tracks the cold-corner ridge n = %.3f (+- 10%%)",
                 n_star, n_cold);
    ok &= expect(n_star < n_hot, "maximum n = %.3f below the hot-corner ridge n = %.3f", n_star,
                 n_hot);
    return ok;
}

// ---------------------------------------------------------------------------
// 4. Low-temperature cycles against the universal Luttinger-liquid closed
//    forms at n=1, c_B=2, kappa=0.5.
bool criterion_luttinger_benchmark()
{
    bool ok = true;
    const double n = 1.0, c_B = 2.0, kappa = 0.5, T_C = 0.1, T_A = kappa * T_C;
    const double v_B = sound_velocity_tba(n, c_B);
    ok &= expect(std::abs(v_B - 2.50) / 2.50 <= 0.01, "v_s^B = %.4f (2.50 +- 1%%)", v_B);

    const std::vector<double> cas{0.5, 0.7, 0.8, 0.9, 1.0, 1.2, 1.4};
    std::vector<double> works;
    std::size_t best = 0;
    for (std::size_t i = 0; i < cas.size(); ++i) {
        TbaCycleSpec spec{cas[i], c_B, T_A, T_C, n, 1.0};
        const auto r = run_tba_cycle(spec);
        const double xi = sound_velocity_tba(n, cas[i]) / v_B;
        const double eta_tll = 1.0 - xi;
        const double w_tll = tll_work(v_B, T_C, kappa, xi, 1.0);
        ok &= expect(std::abs(r.efficiency - eta_tll) / eta_tll <= 0.02,
                     "c_A=%.1f: eta=%.5f vs TLL %.5f (rel %+.4f)", cas[i], r.efficiency,
                     eta_tll, r.efficiency / eta_tll - 1.0);
        ok &= expect(std::abs(r.work - w_tll) / w_tll <= 0.02,
                     "c_A=%.1f: W=%.4e vs TLL %.4e (rel %+.4f)", cas[i], r.work, w_tll,
                     r.work / w_tll - 1.0);
        works.push_back(r.work);
        if (r.work > works[best]) best = i;
    }

    // parabolic refinement of the work maximum over c_A, then its xi
    double c_star = cas[best];
    if (best > 0 && best + 1 < cas.size()) {
        const double d2 = works[best + 1] - 2.0 * works[best] + works[best - 1];
        if (d2 < 0.0)
            c_star = cas[best] -
                     0.5 * (cas[best + 1] - cas[best - 1]) / 2.0 *
                         (works[best + 1] - works[best - 1]) / d2;
    }
    const double xi_star = sound_velocity_tba(n, c_star) / v_B;
    ok &= expect(std::abs(xi_star - 0.69) <= 0.02,
                 "work maximum at c_A=%.3f -> xi = %.4f (0.69 +- 0.02)", c_star, xi_star);
    return ok;
}

// ---------------------------------------------------------------------------
// 5. Always-on property suite.
double ln1pexp(double x) { return x > 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x)); }

struct FreeFermion {
    double p, n, s;
};

FreeFermion free_fermion(double mu, double T)
{
    const double K = std::sqrt(std::max(mu, 0.0) + 50.0 * T);
    const int M = 16000;
    const double h = K / M;
    double p = 0.0, n = 0.0, s = 0.0;
    for (int i = 0; i <= M; ++i) {
        const double k = i * h;
        const double w = (i == 0 || i == M) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double x = (k * k - mu) / T;
        const double f = 1.0 / (1.0 + std::exp(std::min(x, 700.0)));
        p += w * ln1pexp(x);
        n += w * f;
        s += w * (ln1pexp(x) + x * f);
    }
    const double scale = h / 3.0 / kPi;
    return {T * scale * p, scale * n, scale * s};
}

bool criterion_properties()
{
    bool ok = true;

    // first law and Carnot bound at both description levels
    {
        CycleSpec spec{GasSpec{5, 1.0, 1.0}, 100.0, 200.0, 75.0, 150.0};
        const auto r = run_finite_cycle(spec);
        ok &= expect(r.work == r.Q2 - r.Q4, "finite-N first law holds bit-exactly");
        ok &= expect(r.efficiency <= 0.5 + 1e-9, "finite-N Carnot bound: eta=%.4f <= 0.5",
                     r.efficiency);
    }
    {
        TbaCycleSpec spec{1.0, 3.0, 1.0, 5.0, 2.0, 1.0};
        const auto r = run_tba_cycle(spec);
        ok &= expect(r.work == r.Q2 - r.Q4, "TBA first law holds bit-exactly");
        ok &= expect(r.efficiency <= 0.8 + 1e-9, "TBA Carnot bound: eta=%.4f <= 0.8",
                     r.efficiency);

        // isentrope residuals at the matched corners
        auto s_at = [](double c, double n, double T) {
            return thermo_state(c, mu_from_density(c, n, T), T).entropy_density;
        };
        const double s_a = s_at(1.0, 2.0, 1.0);
        const double s_b = s_at(3.0, 2.0, *r.T_B);
        const double s_c = s_at(3.0, 2.0, 5.0);
        const double s_d = s_at(1.0, 2.0, *r.T_D);
        ok &= expect(std::abs(s_a - s_b) <= 1e-9 * s_a,
                     "isentrope A->B residual %.2e (<= 1e-9 rel)", std::abs(s_a - s_b) / s_a);
        ok &= expect(std::abs(s_c - s_d) <= 1e-9 * s_c,
                     "isentrope C->D residual %.2e (<= 1e-9 rel)", std::abs(s_c - s_d) / s_c);
    }

    // Maxwell relation
    {
        const double h = 1e-4;
        const double dn_dT =
            (thermo_state(1.0, 1.0, 1.0 + h).density - thermo_state(1.0, 1.0, 1.0 - h).density) /
            (2.0 * h);
        const double ds_dmu = (thermo_state(1.0, 1.0 + h, 1.0).entropy_density -
                               thermo_state(1.0, 1.0 - h, 1.0).entropy_density) /
                              (2.0 * h);
        ok &= expect(std::abs(dn_dT - ds_dmu) / std::abs(ds_dmu) <= 1e-6,
                     "Maxwell relation: dn/dT=%.8f ds/dmu=%.8f", dn_dT, ds_dmu);
    }

    // Tonks-Girardeau oracle equivalence
    {
        auto st = solve_bethe_roots(QuantumNumbers::ground_state(2), GasSpec{2, 1.0, 1e6});
        ok &= expect(std::abs(st.roots[1] - 2.0 * kPi) <= 1e-4 * 2.0 * kPi,
                     "TG Bethe roots: k_2 = %.6f (2pi +- 1e-4 rel)", st.roots[1]);
        const auto ts = thermo_state(1e8, 1.0, 0.7);
        const auto ff = free_fermion(1.0, 0.7);
        ok &= expect(std::abs(ts.pressure - ff.p) / ff.p <= 1e-6,
                     "TG pressure %.8f vs oracle %.8f", ts.pressure, ff.p);
        ok &= expect(std::abs(ts.density - ff.n) / ff.n <= 1e-6,
                     "TG density %.8f vs oracle %.8f", ts.density, ff.n);
        const double hT = 7e-4, hm = 1e-3;
        auto cv_oracle = [&] {
            const auto tp = free_fermion(1.0, 0.7 + hT), tm = free_fermion(1.0, 0.7 - hT);
            const auto mp = free_fermion(1.0 + hm, 0.7), mm = free_fermion(1.0 - hm, 0.7);
            const double s_T = (tp.s - tm.s) / (2.0 * hT), s_m = (mp.s - mm.s) / (2.0 * hm);
            const double n_T = (tp.n - tm.n) / (2.0 * hT), n_m = (mp.n - mm.n) / (2.0 * hm);
            return 0.7 * (s_T - s_m * n_T / n_m);
        }();
        const double cv = specific_heat(1e8, 1.0, 0.7);
        ok &= expect(std::abs(cv - cv_oracle) / cv_oracle <= 1e-3,
                     "TG specific heat %.6f vs oracle %.6f", cv, cv_oracle);
    }

    // classical-gas limits
    {
        const double T = 2.0, mu = -20.0;
        const auto ts = thermo_state(1.0, mu, T);
        const double p_cl = std::pow(T, 1.5) * std::exp(mu / T) / (2.0 * std::sqrt(kPi));
        ok &= expect(std::abs(ts.pressure - p_cl) / p_cl <= 0.01,
                     "classical pressure %.4e vs %.4e", ts.pressure, p_cl);
        ok &= expect(std::abs(ts.energy_density / ts.density - T / 2.0) / (T / 2.0) <= 0.01,
                     "classical energy per particle %.4f (T/2 = %.4f)",
                     ts.energy_density / ts.density, T / 2.0);
        const double cv_n = specific_heat(1.0, mu, T) / ts.density;
        ok &= expect(std::abs(cv_n - 0.5) <= 0.01, "classical c_v per particle %.4f (0.5 +- 0.01)",
                     cv_n);
    }

    // stationarity of the TLL work at the optimal ratio
    {
        const double kappa = 0.5, xc = optimal_xi(kappa), h = 1e-6;
        const double d = (tll_work(2.5, 1.0, kappa, xc + h, 1.0) -
                          tll_work(2.5, 1.0, kappa, xc - h, 1.0)) /
                         (2.0 * h);
        const double scale = tll_work(2.5, 1.0, kappa, xc, 1.0) / (1.0 - kappa);
        ok &= expect(std::abs(d) / scale <= 1e-6, "W(xi) stationary at xi_c: |dW/dxi| = %.2e", d);
    }
    return ok;
}

// ---------------------------------------------------------------------------
// 6. The three description levels agree in their common regime.
bool criterion_cross_level()
{
    bool ok = true;
    const double n = 1.0, c_A = 100.0, c_B = 200.0;
    TbaCycleSpec spec{c_A, c_B, 0.1, 0.2, n, 1.0};
    const double eta_tba = run_tba_cycle(spec).efficiency;
    const double eta_tll = 1.0 - sound_velocity_tba(n, c_A) / sound_velocity_tba(n, c_B);
    const double eta_strong = 1.0 - sound_velocity_strong(n, c_A) / sound_velocity_strong(n, c_B);
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(a, b); };
    ok &= expect(rel(eta_tba, eta_tll) <= 0.02, "TBA %.6f vs TLL %.6f (rel %.4f)", eta_tba,
                 eta_tll, rel(eta_tba, eta_tll));
    ok &= expect(rel(eta_tba, eta_strong) <= 0.02, "TBA %.6f vs analytic %.6f (rel %.4f)",
                 eta_tba, eta_strong, rel(eta_tba, eta_strong));
    ok &= expect(rel(eta_tll, eta_strong) <= 0.02, "TLL %.6f vs analytic %.6f (rel %.4f)",
                 eta_tll, eta_strong, rel(eta_tll, eta_strong));
    return ok;
}

}  // namespace

int main()
{
    std::printf("interaction-driven quantum heat engine: acceptance suite\n\n");
    struct Entry {
        const char* name;
        bool (*fn)();
    };
    const Entry entries[] = {
        {"finite-N cycle vs analytic strong-coupling curve", criterion_finite_n},
        {"thermodynamic-limit efficiency saturation", criterion_saturation},
        {"work maximum at the quantum-critical crossover", criterion_work_maximum},
        {"low-temperature Luttinger-liquid benchmark", criterion_luttinger_benchmark},
        {"thermodynamic property suite", criterion_properties},
        {"cross-level consistency", criterion_cross_level},
    };
    int index = 1;
    for (const auto& e : entries) {
        bool ok = false;
        std::printf("--- [%d] %s\n", index, e.name);
        try {
            ok = e.fn();
        } catch (const std::exception& ex) {
            std::printf("      BAD exception: %s\n", ex.what());
        }
        verdict(index, e.name, ok);
        ++index;
    }
    std::printf("\n%d of 6 scenarios passed\n", 6 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
