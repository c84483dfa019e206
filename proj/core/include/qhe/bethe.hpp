#ifndef QHE_BETHE_HPP
#define QHE_BETHE_HPP

#include <cstddef>
#include <vector>

#include "qhe/errors.hpp"

namespace qhe {

// Working-substance parameters for the Lieb-Liniger gas in a hard-wall box.
// Units: hbar = 2m = k_B = 1.
struct GasSpec {
    int particle_count = 1;   // N
    double box_length = 1.0;  // L
    double coupling = 1.0;    // c, repulsive contact interaction, 1/length

    void validate() const;
};

// Strictly increasing positive integers I_1 < I_2 < ... < I_N labelling a
// Bethe eigenstate. The ground state is {1, 2, ..., N}.
struct QuantumNumbers {
    std::vector<int> values;

    static QuantumNumbers ground_state(int n);
    void validate() const;

    // Sum of I_i^2, the free-fermion energy in units of pi^2/L^2.
    long long square_sum() const;

    bool operator==(const QuantumNumbers&) const = default;
};

// A solved Bethe eigenstate: quasimomenta 0 < k_1 < ... < k_N with
// eigenenergy E = sum k_i^2.
struct BetheState {
    QuantumNumbers quantum_numbers;
    std::vector<double> roots;
    double energy = 0.0;
    double residual = 0.0;
};

// Solve the logarithmic Bethe equations
//   L k_i = pi I_i - sum_{j != i} [atan((k_i-k_j)/c) + atan((k_i+k_j)/c)]
// by damped Newton iteration with an analytic Jacobian. Throws SolverError
// on non-convergence and UnsupportedLimit for c = 0.
BetheState solve_bethe_roots(const QuantumNumbers& qn, const GasSpec& spec,
                             double tol = 1e-12);

// Enumerate all states whose Boltzmann weight relative to the ground state,
// screened with the strong-coupling energy estimate, exceeds weight_cutoff.
// Returned states carry exact solved roots and are sorted by energy
// ascending, ground state first. Throws ResourceLimit past state_cap.
std::vector<BetheState> enumerate_states(const GasSpec& spec, double temperature,
                                         double weight_cutoff = 1e-8,
                                         std::size_t state_cap = 1000000);

// Enumerate the quantum-number sets alone (same screening rule, ordered by
// square_sum ascending), without solving roots. Used when the same frontier
// must be re-solved at several couplings.
std::vector<QuantumNumbers> enumerate_quantum_numbers(const GasSpec& spec,
                                                      double temperature,
                                                      double weight_cutoff = 1e-8,
                                                      std::size_t state_cap = 1000000);

// lambda_c = 1 - 4(N-1)/(cL) + 12(N-1)^2/(cL)^2, the strong-coupling
// spectral rescaling factor.
double strong_coupling_factor(const GasSpec& spec);

// Strong-coupling estimate (pi^2 lambda_c / L^2) * sum I_i^2. Valid for
// c >> pi N / L; not enforced.
double strong_coupling_energy(const QuantumNumbers& qn, const GasSpec& spec);

}  // namespace qhe

#endif
