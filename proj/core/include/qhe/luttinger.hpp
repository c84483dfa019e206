#ifndef QHE_LUTTINGER_HPP
#define QHE_LUTTINGER_HPP

#include "qhe/errors.hpp"
#include "qhe/tba.hpp"

namespace qhe {

// Dimensionless parameters of the low-temperature universal description:
// xi = v_s^A / v_s^B = T_A/T_B = T_D/T_C and kappa = T_A/T_C. A working
// engine has 0 < kappa < xi < 1.
struct TllParams {
    double v_s_A = 0.0;
    double v_s_B = 0.0;
    double kappa = 0.0;
    double xi = 0.0;

    static TllParams from_velocities(double v_s_A, double v_s_B, double kappa);
    void validate() const;
};

// Strong-coupling expansion v_s = 2 pi n (1 - 4n/c + 12 n^2/c^2). Valid for
// c >> n; not enforced.
double sound_velocity_strong(double n, double c);

// Weak-coupling expansion v_s = 2n sqrt(c/n - (c/n)^{3/2}/(2 pi)). Throws
// DomainError when the radicand is not positive.
double sound_velocity_weak(double n, double c);

// Numerical sound velocity v_s = sqrt(2 n dmu/dn) from near-zero-temperature
// TBA density inversion (T = 1e-4 n^2, central difference at relative step
// 1e-4 in n).
double sound_velocity_tba(double n, double c, const GridConfig& grid = {});

// eta_TLL = 1 - xi.
double tll_efficiency(const TllParams& params);

// W_TLL = (pi L T_C^2 / 6 v_s^B) (1 - xi) (1 - kappa^2/xi^2).
double tll_work(double v_s_B, double T_C, double kappa, double xi, double L);

// Exact maximizer of W_TLL over xi at fixed kappa:
//   xi_c = kappa^2 / a^{1/3} - a^{1/3} / 3,
//   a = 27 kappa^2 [sqrt(1 + kappa^2/27) - 1].
double optimal_xi(double kappa);

// Small-kappa approximation (2 kappa^2)^{1/3} [1 - (kappa/2)^{2/3}/3].
double optimal_xi_small_kappa(double kappa);

// eta_sat = 1 - sqrt(c_A/c_B), the weak-coupling saturation value.
double weak_coupling_efficiency(double c_A, double c_B);

// Effective bosonic coupling of contact-interacting 1D anyons with
// statistical parameter theta: c = c_tilde / cos(theta/2).
double anyon_effective_coupling(double c_tilde, double theta);

// Effective coupling of the SU(2) spinor Fermi gas given the spin-spin
// correlator: c = (3 c_o + c_e)/4 + (c_o - c_e) <S_i . S_j>.
double spinor_effective_coupling(double c_odd, double c_even, double spin_corr);

}  // namespace qhe

#endif
