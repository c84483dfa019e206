#include "qhe/tba.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qhe/quadrature.hpp"

namespace qhe {

namespace {

constexpr double kPi = std::numbers::pi;

double ln1pexp(double x)
{
    if (x > 35.0) return x;
    if (x < -35.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

// Fermi factor 1 / (1 + e^x).
double fermi(double x)
{
    if (x > 35.0) return std::exp(-x);
    if (x < -35.0) return 1.0;
    return 1.0 / (1.0 + std::exp(x));
}

struct HalfGrid {
    std::vector<double> nodes;    // ascending, in (0, K)
    std::vector<double> weights;
    double cutoff = 0.0;          // K
};

// Composite Gauss-Legendre grid on [0, K]. `edge` > 0 requests geometric
// panel refinement around the (dressed) Fermi point, needed when the
// thermal width T/(2 k_F) is unresolvably small; panels are everywhere kept
// finer than the Lorentzian kernel width.
HalfGrid build_grid(double c, double T, double K, double edge, const GridConfig& cfg)
{
    std::vector<double> breaks{0.0, K};

    const double h_max = std::min(K / 4.0, 2.0 * c) / cfg.density_scale;
    if (K / h_max > 4000.0)
        throw GridError("tba grid: kernel width too small relative to cutoff");

    double edge_width = 0.0;
    if (edge > 0.0) {
        edge_width = T / std::max(2.0 * edge, std::sqrt(T));
        if (edge_width < 0.05 * K) {
            const double w_lo = edge_width / cfg.density_scale;
            breaks.push_back(edge);
            for (double span = w_lo; span < 2.0 * K; span *= 2.0) {
                if (edge - span > w_lo) breaks.push_back(edge - span);
                if (edge + span < K - w_lo) breaks.push_back(edge + span);
            }
        }
    }

    std::sort(breaks.begin(), breaks.end());
    std::vector<double> clean;
    for (double b : breaks)
        if (clean.empty() || b - clean.back() > 1e-14 * K) clean.push_back(b);
    if (clean.back() != K) clean.back() = K;

    // Subdivide panels wider than h_max.
    std::vector<double> final_breaks{clean.front()};
    for (std::size_t i = 0; i + 1 < clean.size(); ++i) {
        const double a = clean[i], b = clean[i + 1];
        const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / h_max)));
        for (int p = 1; p <= parts; ++p)
            final_breaks.push_back(a + (b - a) * p / parts);
    }

    QuadratureRule rule = composite_gauss_legendre(cfg.panel_order, final_breaks);
    if (rule.nodes.size() > 60000)
        throw GridError("tba grid: node count exceeds cap; relax density_scale");

    HalfGrid g;
    g.nodes = std::move(rule.nodes);
    g.weights = std::move(rule.weights);
    g.cutoff = K;
    return g;
}

struct TbaSolution {
    HalfGrid grid;
    Eigen::VectorXd eps;
    Eigen::VectorXd bare;       // k^2 - mu
    Eigen::MatrixXd kernel;     // folded kernel with quadrature weights / 2pi
    Eigen::VectorXd fermi_fac;  // 1/(1+e^{eps/T})
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;  // LU of I - kernel*diag(f)
    double residual = 0.0;
    double eps_at_cutoff = 0.0;
    double c = 0.0, mu = 0.0, T = 0.0;
};

// Fixed-point iteration with under-relaxation on oscillation, switching to
// damped Newton once the residual is moderate. The converged Jacobian
// I - K diag(f) is exactly the matrix of the linearized equations for
// d eps/d mu and d eps/d T, so its factorization is kept.
void solve_on_grid(TbaSolution& sol, const GridConfig& cfg)
{
    const double c = sol.c, mu = sol.mu, T = sol.T;
    const auto& k = sol.grid.nodes;
    const auto& w = sol.grid.weights;
    const int m = static_cast<int>(k.size());

    sol.kernel.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double dm = k[i] - k[j];
            const double dp = k[i] + k[j];
            sol.kernel(i, j) = (w[j] / (2.0 * kPi)) *
                               (2.0 * c / (c * c + dm * dm) + 2.0 * c / (c * c + dp * dp));
        }

    sol.bare.resize(m);
    for (int i = 0; i < m; ++i) sol.bare[i] = k[i] * k[i] - mu;

    Eigen::VectorXd eps = sol.bare;
    Eigen::VectorXd logt(m), f(m);
    auto refresh = [&](const Eigen::VectorXd& e) {
        for (int i = 0; i < m; ++i) logt[i] = ln1pexp(-e[i] / T);
    };
    auto residual_of = [&](const Eigen::VectorXd& e) -> Eigen::VectorXd {
        refresh(e);
        return e - sol.bare + T * (sol.kernel * logt);
    };

    const double scale = std::max({1.0, std::abs(mu), sol.bare.cwiseAbs().maxCoeff()});
    const double tol = cfg.tolerance * scale;

    Eigen::VectorXd F = residual_of(eps);
    double res = F.lpNorm<Eigen::Infinity>();
    double prev_res = std::numeric_limits<double>::infinity();
    double relax = 1.0;
    int iter = 0;

    // Fixed-point phase.
    while (res > 1e-3 * scale && iter < std::min(cfg.max_iterations, 200)) {
        if (res > prev_res) relax = 0.5;  // oscillation detected
        eps -= relax * F;
        prev_res = res;
        F = residual_of(eps);
        res = F.lpNorm<Eigen::Infinity>();
        ++iter;
    }

    // Newton phase.
    Eigen::MatrixXd jac(m, m);
    while (res > tol && iter < cfg.max_iterations) {
        refresh(eps);
        for (int i = 0; i < m; ++i) f[i] = fermi(eps[i] / T);
        jac = -sol.kernel * f.asDiagonal();
        jac.diagonal().array() += 1.0;
        Eigen::VectorXd step = jac.partialPivLu().solve(F);
        double damp = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 40; ++bt) {
            Eigen::VectorXd trial = eps - damp * step;
            Eigen::VectorXd Ft = residual_of(trial);
            const double rt = Ft.lpNorm<Eigen::Infinity>();
            if (rt < res) {
                eps = trial;
                F = Ft;
                res = rt;
                moved = true;
                break;
            }
            damp *= 0.5;
        }
        ++iter;
        if (!moved) break;
    }

    if (!(res <= tol))
        throw SolverError("solve_dressed_energy: no convergence after " +
                              std::to_string(iter) + " iterations (sup-norm residual " +
                              std::to_string(res) + ")",
                          res);

    sol.eps = eps;
    refresh(eps);
    sol.fermi_fac.resize(m);
    for (int i = 0; i < m; ++i) sol.fermi_fac[i] = fermi(eps[i] / T);
    jac = -sol.kernel * sol.fermi_fac.asDiagonal();
    jac.diagonal().array() += 1.0;
    sol.lu.compute(jac);
    sol.residual = res;

    // Dressed energy at the cutoff itself (nodes are interior).
    const double K = sol.grid.cutoff;
    double conv = 0.0;
    for (int i = 0; i < m; ++i) {
        const double dm = K - k[i];
        const double dp = K + k[i];
        conv += (w[i] / (2.0 * kPi)) *
                (2.0 * c / (c * c + dm * dm) + 2.0 * c / (c * c + dp * dp)) * logt[i];
    }
    sol.eps_at_cutoff = K * K - mu - T * conv;
}

// Full solve with adaptive cutoff and Fermi-edge placement. The dressing
// shifts the zero of eps(k) above sqrt(mu), so both the refinement center
// and the cutoff are re-estimated from the solved values until stable.
TbaSolution solve_adaptive(double c, double mu, double T, const GridConfig& cfg)
{
    if (!(c > 0.0)) throw InvalidInput("tba: coupling must be > 0");
    if (!(T > 0.0)) throw InvalidInput("tba: temperature must be > 0");

    double edge = std::sqrt(std::max(mu, 0.0));
    double K = cfg.cutoff_scale * std::sqrt(edge * edge + cfg.tail_sigma * T);

    TbaSolution sol;
    sol.c = c;
    sol.mu = mu;
    sol.T = T;

    const double tail_needed = 0.8 * cfg.tail_sigma * T;
    for (int outer = 0; outer < 10; ++outer) {
        sol.grid = build_grid(c, T, K, edge, cfg);
        solve_on_grid(sol, cfg);

        // Locate the dressed Fermi point (zero crossing of eps), if any.
        double new_edge = 0.0;
        const auto& k = sol.grid.nodes;
        if (sol.eps[0] < 0.0) {
            new_edge = K;
            for (std::size_t i = 1; i < k.size(); ++i) {
                if (sol.eps[i] >= 0.0) {
                    const double t = -sol.eps[i - 1] / (sol.eps[i] - sol.eps[i - 1]);
                    new_edge = k[i - 1] + t * (k[i] - k[i - 1]);
                    break;
                }
            }
        }

        const bool tail_ok = sol.eps_at_cutoff >= tail_needed;
        // Edge placement only matters when refinement is needed there; then
        // the center must sit within a fraction of the finest panel.
        const double edge_width = T / std::max(2.0 * new_edge, std::sqrt(T));
        const bool need_refine = new_edge > 0.0 && edge_width < 0.05 * K;
        const bool edge_ok = !need_refine || std::abs(new_edge - edge) <= 0.25 * edge_width;
        if (tail_ok && edge_ok) return sol;

        // eps(K) ~ K^2 - mu_eff, so enlarge the cutoff by the tail deficit.
        if (!tail_ok)
            K = std::sqrt(K * K + (cfg.tail_sigma * T - sol.eps_at_cutoff));
        edge = new_edge;
        K = std::max(K, cfg.cutoff_scale * std::sqrt(edge * edge + cfg.tail_sigma * T));
    }
    throw GridError("tba: cutoff adaptation failed; increase tail_sigma or cutoff_scale");
}

double tail_pressure(double T, double K, double eps_at_cutoff)
{
    // Beyond K the integrand is ~ e^{-eps/T} with eps growing like 2K(k-K).
    const double x = eps_at_cutoff / T;
    if (x > 700.0) return 0.0;
    return (T / kPi) * (T / (2.0 * K)) * std::exp(-x);
}

}  // namespace

DressedEnergy solve_dressed_energy(double c, double mu, double T, const GridConfig& cfg)
{
    TbaSolution sol = solve_adaptive(c, mu, T, cfg);
    const std::size_t m = sol.grid.nodes.size();

    DressedEnergy de;
    de.coupling = c;
    de.chemical_potential = mu;
    de.temperature = T;
    de.residual = sol.residual;
    de.cutoff = sol.grid.cutoff;
    de.grid.resize(2 * m);
    de.values.resize(2 * m);
    de.quadrature_weights.resize(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        de.grid[m + i] = sol.grid.nodes[i];
        de.grid[m - 1 - i] = -sol.grid.nodes[i];
        de.values[m + i] = sol.eps[i];
        de.values[m - 1 - i] = sol.eps[i];
        de.quadrature_weights[m + i] = sol.grid.weights[i];
        de.quadrature_weights[m - 1 - i] = sol.grid.weights[i];
    }
    return de;
}

double pressure(const DressedEnergy& de)
{
    const double T = de.temperature;
    double p = 0.0;
    for (std::size_t i = 0; i < de.grid.size(); ++i)
        p += de.quadrature_weights[i] * ln1pexp(-de.values[i] / T);
    p *= T / (2.0 * kPi);

    const double eps_out = de.values.back() +
                           (de.cutoff * de.cutoff - de.grid.back() * de.grid.back());
    return p + tail_pressure(T, de.cutoff, eps_out);
}

ThermoState thermo_state(double c, double mu, double T, const GridConfig& cfg)
{
    TbaSolution sol = solve_adaptive(c, mu, T, cfg);
    const auto& k = sol.grid.nodes;
    const auto& w = sol.grid.weights;
    const int m = static_cast<int>(k.size());

    Eigen::VectorXd logt(m);
    for (int i = 0; i < m; ++i) logt[i] = ln1pexp(-sol.eps[i] / T);

    double p = 0.0;
    for (int i = 0; i < m; ++i) p += w[i] * logt[i];
    p *= T / kPi;
    p += tail_pressure(T, sol.grid.cutoff, sol.eps_at_cutoff);

    // d eps / d mu.
    const Eigen::VectorXd eps_mu = sol.lu.solve(Eigen::VectorXd::Constant(m, -1.0));

    // d eps / d T.
    Eigen::VectorXd fe(m);
    for (int i = 0; i < m; ++i) fe[i] = sol.fermi_fac[i] * sol.eps[i];
    Eigen::VectorXd rhs = -(sol.bare - sol.eps) / T - (sol.kernel * fe) / T;
    const Eigen::VectorXd eps_T = sol.lu.solve(rhs);

    double n = 0.0, s_int = 0.0;
    for (int i = 0; i < m; ++i) {
        n += w[i] * sol.fermi_fac[i] * (-eps_mu[i]);
        s_int += w[i] * sol.fermi_fac[i] * (sol.eps[i] / T - eps_T[i]);
    }
    n /= kPi;
    n += tail_pressure(T, sol.grid.cutoff, sol.eps_at_cutoff) / T;  // d(tail)/dmu
    const double s = p / T + s_int / kPi;

    ThermoState st;
    st.coupling = c;
    st.chemical_potential = mu;
    st.temperature = T;
    st.pressure = p;
    st.density = n;
    st.entropy_density = s;
    st.energy_density = -p + mu * n + T * s;
    return st;
}

double mu_from_density(double c, double n_target, double T, const GridConfig& cfg,
                       std::optional<double> mu_hint)
{
    if (!(n_target > 0.0)) throw InvalidInput("mu_from_density: density must be > 0");

    auto density_at = [&](double mu) { return thermo_state(c, mu, T, cfg).density; };

    double mu0;
    if (mu_hint) {
        mu0 = *mu_hint;
    } else {
        // Classical estimate at low degeneracy, interaction-capped degenerate
        // estimate otherwise.
        const double mu_cl = T * std::log(2.0 * n_target * std::sqrt(kPi / T));
        const double mu_deg = n_target * n_target * std::min(kPi * kPi, 2.0 * c / n_target);
        mu0 = std::max(mu_cl, mu_deg);
    }

    double a = mu0, fa = density_at(a) - n_target;
    if (std::abs(fa) <= 1e-8 * n_target) return a;

    // Expand to a bracket; density is monotone increasing in mu.
    double step = std::max({std::abs(mu0) * 0.5, T, 0.1});
    double b = a, fb = fa;
    for (int i = 0; i < 80 && fa * fb >= 0.0; ++i) {
        if (fa > 0.0) {
            b = a;
            fb = fa;
            a -= step;
            fa = density_at(a) - n_target;
        } else {
            a = b;
            fa = fb;
            b += step;
            fb = density_at(b) - n_target;
        }
        step *= 2.0;
    }
    if (fa * fb > 0.0)
        throw InversionError("mu_from_density: failed to bracket target density");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;

    // Secant steps safeguarded by the bracket.
    double x = a, fx = fa;
    double x_prev = b, f_prev = fb;
    for (int i = 0; i < 200; ++i) {
        double x_new;
        if (fx != f_prev) {
            x_new = x - fx * (x - x_prev) / (fx - f_prev);
            if (!(x_new > a && x_new < b)) x_new = 0.5 * (a + b);
        } else {
            x_new = 0.5 * (a + b);
        }
        const double f_new = density_at(x_new) - n_target;
        if (std::abs(f_new) <= 1e-8 * n_target) return x_new;
        if (f_new < 0.0)
            a = x_new;
        else
            b = x_new;
        x_prev = x;
        f_prev = fx;
        x = x_new;
        fx = f_new;
        if (b - a <= 1e-15 * std::max(1.0, std::abs(x))) return x;
    }
    throw InversionError("mu_from_density: secant refinement did not converge");
}

double specific_heat(double c, double mu, double T, const GridConfig& cfg)
{
    // Heat capacity per length at fixed density, T (ds/dT)_n, assembled from
    // grand-canonical derivatives at the point (mu, T):
    //   (ds/dT)_n = s_T - s_mu * n_T / n_mu   with n_T = s_mu (Maxwell).
    double h_T = std::max(1e-4, 1e-3 * T);
    h_T = std::min(h_T, 0.5 * T);
    const double h_mu = std::max(1e-4, 1e-3 * std::abs(mu));

    const ThermoState tp = thermo_state(c, mu, T + h_T, cfg);
    const ThermoState tm = thermo_state(c, mu, T - h_T, cfg);
    const ThermoState mp = thermo_state(c, mu + h_mu, T, cfg);
    const ThermoState mm = thermo_state(c, mu - h_mu, T, cfg);

    const double s_T = (tp.entropy_density - tm.entropy_density) / (2.0 * h_T);
    const double s_mu = (mp.entropy_density - mm.entropy_density) / (2.0 * h_mu);
    const double n_T = (tp.density - tm.density) / (2.0 * h_T);
    const double n_mu = (mp.density - mm.density) / (2.0 * h_mu);

    return T * (s_T - s_mu * n_T / n_mu);
}

}  // namespace qhe
