#include "qhe/luttinger.hpp"

#include <cmath>
#include <numbers>

namespace qhe {

namespace {
constexpr double kPi = std::numbers::pi;
}

TllParams TllParams::from_velocities(double v_s_A, double v_s_B, double kappa)
{
    TllParams p;
    p.v_s_A = v_s_A;
    p.v_s_B = v_s_B;
    p.kappa = kappa;
    p.xi = v_s_A / v_s_B;
    p.validate();
    return p;
}

void TllParams::validate() const
{
    if (!(v_s_A > 0.0 && v_s_B > 0.0))
        throw InvalidInput("TllParams: sound velocities must be > 0");
    if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidInput("TllParams: kappa must be in (0,1)");
    if (!(xi > 0.0 && xi <= 1.0)) throw InvalidInput("TllParams: xi must be in (0,1]");
}

double sound_velocity_strong(double n, double c)
{
    if (!(n > 0.0 && c > 0.0)) throw InvalidInput("sound_velocity_strong: n, c must be > 0");
    const double x = n / c;
    return 2.0 * kPi * n * (1.0 - 4.0 * x + 12.0 * x * x);
}

double sound_velocity_weak(double n, double c)
{
    if (!(n > 0.0 && c > 0.0)) throw InvalidInput("sound_velocity_weak: n, c must be > 0");
    const double g = c / n;
    const double radicand = g - std::pow(g, 1.5) / (2.0 * kPi);
    if (!(radicand > 0.0))
        throw DomainError("sound_velocity_weak: expansion invalid (non-positive radicand)");
    return 2.0 * n * std::sqrt(radicand);
}

double sound_velocity_tba(double n, double c, const GridConfig& grid)
{
    if (!(n > 0.0 && c > 0.0)) throw InvalidInput("sound_velocity_tba: n, c must be > 0");
    const double T = 1e-4 * n * n;
    const double dn = 1e-4 * n;
    const double mu_plus = mu_from_density(c, n + dn, T, grid);
    const double mu_minus = mu_from_density(c, n - dn, T, grid, mu_plus);
    const double dmu_dn = (mu_plus - mu_minus) / (2.0 * dn);
    return std::sqrt(2.0 * n * dmu_dn);
}

double tll_efficiency(const TllParams& params)
{
    params.validate();
    return 1.0 - params.xi;
}

double tll_work(double v_s_B, double T_C, double kappa, double xi, double L)
{
    if (!(xi != 0.0)) throw DomainError("tll_work: xi must be nonzero");
    if (!(v_s_B > 0.0)) throw InvalidInput("tll_work: v_s_B must be > 0");
    return kPi * L * T_C * T_C / (6.0 * v_s_B) * (1.0 - xi) *
           (1.0 - kappa * kappa / (xi * xi));
}

double optimal_xi(double kappa)
{
    if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidInput("optimal_xi: kappa must be in (0,1)");
    const double k2 = kappa * kappa;
    const double a = 27.0 * k2 * (std::sqrt(1.0 + k2 / 27.0) - 1.0);
    const double a13 = std::cbrt(a);
    return k2 / a13 - a13 / 3.0;
}

double optimal_xi_small_kappa(double kappa)
{
    if (!(kappa > 0.0 && kappa < 1.0))
        throw InvalidInput("optimal_xi_small_kappa: kappa must be in (0,1)");
    return std::cbrt(2.0 * kappa * kappa) *
           (1.0 - std::pow(kappa / 2.0, 2.0 / 3.0) / 3.0);
}

double weak_coupling_efficiency(double c_A, double c_B)
{
    if (!(c_A > 0.0 && c_B > 0.0))
        throw InvalidInput("weak_coupling_efficiency: couplings must be > 0");
    if (!(c_A <= c_B)) throw InvalidInput("weak_coupling_efficiency: requires c_A <= c_B");
    return 1.0 - std::sqrt(c_A / c_B);
}

double anyon_effective_coupling(double c_tilde, double theta)
{
    if (!(c_tilde > 0.0)) throw InvalidInput("anyon_effective_coupling: c_tilde must be > 0");
    if (!(theta >= 0.0 && theta < kPi))
        throw InvalidInput("anyon_effective_coupling: theta must be in [0, pi)");
    const double cosine = std::cos(theta / 2.0);
    if (!(cosine > 1e-12))
        throw DomainError("anyon_effective_coupling: theta -> pi diverges (TG limit)");
    return c_tilde / cosine;
}

double spinor_effective_coupling(double c_odd, double c_even, double spin_corr)
{
    if (!(spin_corr >= -0.75 && spin_corr <= 0.25))
        throw InvalidInput("spinor_effective_coupling: correlator outside [-3/4, 1/4]");
    return (3.0 * c_odd + c_even) / 4.0 + (c_odd - c_even) * spin_corr;
}

}  // namespace qhe
