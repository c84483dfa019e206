#include "qhe/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qhe {

void CycleSpec::validate() const
{
    gas.validate();
    if (!(c_A > 0.0 && c_B > 0.0)) throw InvalidInput("CycleSpec: couplings must be > 0");
    if (!(c_A <= c_B)) throw InvalidInput("CycleSpec: requires c_A <= c_B");
    if (!(T_A > 0.0 && T_C > 0.0)) throw InvalidInput("CycleSpec: temperatures must be > 0");
    if (!(T_A < T_C)) throw InvalidInput("CycleSpec: requires T_A < T_C");
}

GibbsEnsemble gibbs_ensemble(std::vector<BetheState> states, double temperature)
{
    if (states.empty()) throw InvalidInput("gibbs_ensemble: empty state list");
    if (!(temperature > 0.0)) throw InvalidInput("gibbs_ensemble: temperature must be > 0");
    for (const BetheState& s : states)
        if (!std::isfinite(s.energy)) throw InvalidInput("gibbs_ensemble: non-finite energy");

    std::sort(states.begin(), states.end(),
              [](const BetheState& a, const BetheState& b) { return a.energy < b.energy; });

    const double e0 = states.front().energy;
    GibbsEnsemble ens;
    ens.temperature = temperature;
    ens.probabilities.resize(states.size());
    double z_shifted = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        ens.probabilities[i] = std::exp(-(states[i].energy - e0) / temperature);
        z_shifted += ens.probabilities[i];
    }
    for (double& p : ens.probabilities) p /= z_shifted;
    ens.partition_function = z_shifted * std::exp(-e0 / temperature);
    ens.states = std::move(states);
    return ens;
}

double equilibrium_energy(const GibbsEnsemble& ens)
{
    double e = 0.0;
    for (std::size_t i = 0; i < ens.states.size(); ++i)
        e += ens.probabilities[i] * ens.states[i].energy;
    return e;
}

double adiabatic_energy(const GibbsEnsemble& ens, double target_coupling,
                        const GasSpec& spec)
{
    if (!(target_coupling > 0.0))
        throw InvalidInput("adiabatic_energy: target coupling must be > 0");
    GasSpec target = spec;
    target.coupling = target_coupling;

    double e = 0.0;
    for (std::size_t i = 0; i < ens.states.size(); ++i) {
        const BetheState resolved = solve_bethe_roots(ens.states[i].quantum_numbers, target);
        e += ens.probabilities[i] * resolved.energy;
    }
    return e;
}

double effective_temperature(double c, double c_prime, double temperature,
                             const GasSpec& spec)
{
    GasSpec at_c = spec;
    at_c.coupling = c;
    GasSpec at_cp = spec;
    at_cp.coupling = c_prime;
    return strong_coupling_factor(at_cp) * temperature / strong_coupling_factor(at_c);
}

double strong_coupling_efficiency(double c_A, double c_B, const GasSpec& spec)
{
    if (!(c_A <= c_B)) throw InvalidInput("strong_coupling_efficiency: requires c_A <= c_B");
    GasSpec a = spec;
    a.coupling = c_A;
    GasSpec b = spec;
    b.coupling = c_B;
    return 1.0 - strong_coupling_factor(a) / strong_coupling_factor(b);
}

CycleResult run_finite_cycle(const CycleSpec& spec, double weight_cutoff)
{
    spec.validate();

    // One shared quantum-number frontier: enumerate at whichever (c, T) pair
    // has the slowest Boltzmann decay, then re-solve the same sets at both
    // couplings so the adiabatic mapping is state-by-state.
    GasSpec gas_a = spec.gas;
    gas_a.coupling = spec.c_A;
    GasSpec gas_b = spec.gas;
    gas_b.coupling = spec.c_B;

    const double decay_a = std::min(strong_coupling_factor(gas_a), 1.0) / spec.T_A;
    const double decay_b = std::min(strong_coupling_factor(gas_b), 1.0) / spec.T_C;
    const GasSpec& slow_gas = decay_a < decay_b ? gas_a : gas_b;
    const double slow_temp = decay_a < decay_b ? spec.T_A : spec.T_C;

    const std::vector<QuantumNumbers> frontier =
        enumerate_quantum_numbers(slow_gas, slow_temp, weight_cutoff);

    std::vector<BetheState> states_a, states_b;
    states_a.reserve(frontier.size());
    states_b.reserve(frontier.size());
    for (const QuantumNumbers& qn : frontier) {
        states_a.push_back(solve_bethe_roots(qn, gas_a));
        states_b.push_back(solve_bethe_roots(qn, gas_b));
    }

    const GibbsEnsemble ens_A = gibbs_ensemble(states_a, spec.T_A);
    const GibbsEnsemble ens_C = gibbs_ensemble(states_b, spec.T_C);

    const double e_eq_A = equilibrium_energy(ens_A);
    const double e_eq_C = equilibrium_energy(ens_C);
    const double e_neq_B = adiabatic_energy(ens_A, spec.c_B, spec.gas);
    const double e_neq_D = adiabatic_energy(ens_C, spec.c_A, spec.gas);

    CycleResult result;
    result.Q2 = e_eq_C - e_neq_B;
    result.Q4 = e_neq_D - e_eq_A;
    result.work = result.Q2 - result.Q4;

    if (spec.c_A == spec.c_B) {
        result.efficiency = 0.0;
    } else {
        if (!(result.Q2 > 0.0))
            throw NotAnEngine("run_finite_cycle: Q2 <= 0, no net heat intake");
        result.efficiency = result.work / result.Q2;
    }

    // Post-isentrope temperatures are defined only where the spectrum is
    // scale invariant.
    const double strong = 100.0 * spec.gas.particle_count / spec.gas.box_length;
    if (spec.c_A >= strong && spec.c_B >= strong) {
        result.T_B = effective_temperature(spec.c_A, spec.c_B, spec.T_A, spec.gas);
        result.T_D = effective_temperature(spec.c_B, spec.c_A, spec.T_C, spec.gas);
    }
    return result;
}

}  // namespace qhe
