#ifndef QHE_TBA_HPP
#define QHE_TBA_HPP

#include <optional>
#include <vector>

#include "qhe/errors.hpp"

namespace qhe {

// Momentum-grid policy for the dressed-energy solver. The grid is a
// composite Gauss-Legendre rule on [-K, K] with K^2 = max(mu, 0) +
// tail_sigma * T (scaled by cutoff_scale), refined geometrically around the
// Fermi edge at low temperature and kept finer than the Lorentzian kernel
// width. density_scale > 1 produces a proportionally denser grid; both
// scale knobs exist for convergence cross-checks.
struct GridConfig {
    int panel_order = 10;
    double tail_sigma = 36.0;
    double cutoff_scale = 1.0;
    double density_scale = 1.0;
    double tolerance = 1e-12;
    int max_iterations = 10000;
};

// Solution of the Yang-Yang equation
//   eps(k) = k^2 - mu - (T/2pi) int 2c/(c^2+(k-q)^2) ln(1+e^{-eps(q)/T}) dq
// sampled on a symmetric quadrature grid.
struct DressedEnergy {
    double coupling = 0.0;
    double chemical_potential = 0.0;
    double temperature = 0.0;
    std::vector<double> grid;               // symmetric about 0, ascending
    std::vector<double> values;             // eps at the nodes
    std::vector<double> quadrature_weights;
    double residual = 0.0;
    double cutoff = 0.0;                    // K
};

// One grand-canonical equilibrium point with its thermodynamic functions.
struct ThermoState {
    double coupling = 0.0;
    double chemical_potential = 0.0;
    double temperature = 0.0;
    double pressure = 0.0;
    double density = 0.0;
    double entropy_density = 0.0;
    double energy_density = 0.0;  // -p + mu n + T s
};

DressedEnergy solve_dressed_energy(double c, double mu, double T,
                                   const GridConfig& grid = {});

// p = (T/2pi) int ln(1 + e^{-eps/T}) dk over the stored grid plus the
// analytic Gaussian tail beyond the cutoff.
double pressure(const DressedEnergy& de);

// Pressure plus n = dp/dmu and s = dp/dT from implicit differentiation of
// the TBA equation (linear integral equations sharing the kernel matrix).
ThermoState thermo_state(double c, double mu, double T, const GridConfig& grid = {});

// Invert n(mu) at fixed (c, T) to relative accuracy 1e-8. mu_hint warm-starts
// the secant iteration.
double mu_from_density(double c, double n_target, double T, const GridConfig& grid = {},
                       std::optional<double> mu_hint = std::nullopt);

// Heat capacity per length at fixed density, T (ds/dT)_n, assembled from
// central-difference grand-canonical derivatives at (mu, T).
double specific_heat(double c, double mu, double T, const GridConfig& grid = {});

}  // namespace qhe

#endif
