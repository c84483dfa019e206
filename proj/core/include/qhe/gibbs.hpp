#ifndef QHE_GIBBS_HPP
#define QHE_GIBBS_HPP

#include <vector>

#include "qhe/bethe.hpp"
#include "qhe/cycle_result.hpp"

namespace qhe {

// Canonical ensemble over a retained set of Bethe eigenstates,
// p_n = exp(-e_n/T) / Z.
struct GibbsEnsemble {
    std::vector<BetheState> states;
    double temperature = 0.0;
    std::vector<double> probabilities;
    double partition_function = 0.0;
};

// Parameters of the finite-N interaction-driven cycle. The coupling field of
// `gas` is unused; the cycle visits c_A and c_B.
struct CycleSpec {
    GasSpec gas;
    double c_A = 0.0;
    double c_B = 0.0;
    double T_A = 0.0;
    double T_C = 0.0;

    void validate() const;
};

// Boltzmann probabilities with ground-state energy subtracted before
// exponentiation. States are sorted by energy ascending.
GibbsEnsemble gibbs_ensemble(std::vector<BetheState> states, double temperature);

// <E> = sum p_n e_n.
double equilibrium_energy(const GibbsEnsemble& ens);

// Energy after an adiabatic coupling ramp: each retained quantum-number set
// is re-solved at target_coupling while the populations are kept fixed.
double adiabatic_energy(const GibbsEnsemble& ens, double target_coupling,
                        const GasSpec& spec);

// T' = lambda_{c'} T / lambda_c. Meaningful in the strong-coupling regime.
double effective_temperature(double c, double c_prime, double temperature,
                             const GasSpec& spec);

// Four-stroke cycle at finite N from exact enumerated ensembles.
CycleResult run_finite_cycle(const CycleSpec& spec, double weight_cutoff = 1e-8);

// eta = 1 - lambda_{c_A} / lambda_{c_B}, the strong-coupling closed form.
double strong_coupling_efficiency(double c_A, double c_B, const GasSpec& spec);

}  // namespace qhe

#endif
