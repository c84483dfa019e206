#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qhe/bethe.hpp"
#include "qhe/gibbs.hpp"

using namespace qhe;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("single-state ensemble is certain")
{
    auto st = solve_bethe_roots(QuantumNumbers::ground_state(2), GasSpec{2, 1.0, 3.0});
    auto ens = gibbs_ensemble({st}, 10.0);
    CHECK(ens.probabilities.size() == 1);
    CHECK(ens.probabilities[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ens.partition_function > 0.0);
}

TEST_CASE("probabilities normalize, decrease with energy, and follow Boltzmann")
{
    const double T = 60.0;
    auto states = enumerate_states(GasSpec{3, 1.0, 8.0}, T, 1e-10);
    auto ens = gibbs_ensemble(states, T);
    double sum = 0.0;
    for (double p : ens.probabilities) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < ens.probabilities.size(); ++i)
        CHECK(ens.probabilities[i] <= ens.probabilities[i - 1] + 1e-15);
    // p_i / p_0 = exp(-(e_i - e_0)/T)
    for (std::size_t i = 0; i < ens.states.size(); ++i)
        CHECK(ens.probabilities[i] / ens.probabilities[0] ==
              doctest::Approx(std::exp(-(ens.states[i].energy - ens.states[0].energy) / T))
                  .epsilon(1e-12));
}

TEST_CASE("TG probabilities match closed-form free-fermion energies")
{
    const double T = 100.0;
    auto states = enumerate_states(GasSpec{2, 1.0, 1e6}, T, 1e-10);
    auto ens = gibbs_ensemble(states, T);
    // independent evaluation from E = pi^2 (I1^2 + I2^2)
    double z = 0.0;
    std::vector<double> expected;
    const double e0 = kPi * kPi * 5.0;
    for (const auto& st : ens.states) {
        long long s2 = st.quantum_numbers.square_sum();
        expected.push_back(std::exp(-(kPi * kPi * s2 - e0) / T));
        z += expected.back();
    }
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(ens.probabilities[i] == doctest::Approx(expected[i] / z).epsilon(1e-4));
}

TEST_CASE("empty state list is invalid")
{
    CHECK_THROWS_AS(gibbs_ensemble({}, 1.0), InvalidInput);
}

TEST_CASE("equilibrium energy interpolates the spectrum")
{
    GasSpec spec{3, 1.0, 10.0};
    auto cold = gibbs_ensemble(enumerate_states(spec, 1e-5), 1e-5);
    auto e_ground = solve_bethe_roots(QuantumNumbers::ground_state(3), spec).energy;
    CHECK(equilibrium_energy(cold) == doctest::Approx(e_ground).epsilon(1e-12));

    // warm ensemble averages above the ground state
    auto warm = gibbs_ensemble(enumerate_states(spec, 50.0, 1e-10), 50.0);
    CHECK(equilibrium_energy(warm) > e_ground);
}

TEST_CASE("equilibrium energy is converged in the enumeration cutoff")
{
    const double T = 150.0;
    GasSpec spec{5, 1.0, 200.0};
    double e1 = equilibrium_energy(gibbs_ensemble(enumerate_states(spec, T, 1e-8), T));
    double e2 = equilibrium_energy(gibbs_ensemble(enumerate_states(spec, T, 1e-14), T));
    CHECK(std::abs(e1 - e2) / e2 < 5e-6);
}

TEST_CASE("identity ramp leaves the energy unchanged")
{
    GasSpec spec{3, 1.0, 4.0};
    auto ens = gibbs_ensemble(enumerate_states(spec, 30.0, 1e-10), 30.0);
    CHECK(adiabatic_energy(ens, 4.0, spec) ==
          doctest::Approx(equilibrium_energy(ens)).epsilon(1e-12));
}

TEST_CASE("adiabatic ramp matches a per-state re-solve")
{
    const double T = 20.0;
    GasSpec spec{2, 1.0, 1.0};
    auto ens = gibbs_ensemble(enumerate_states(spec, T, 1e-10), T);
    GasSpec target{2, 1.0, 2.0};
    double direct = 0.0;
    for (std::size_t i = 0; i < ens.states.size(); ++i) {
        auto st = solve_bethe_roots(ens.states[i].quantum_numbers, target);
        direct += ens.probabilities[i] * st.energy;
    }
    CHECK(adiabatic_energy(ens, 2.0, spec) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("adiabatic ramp keeps the populations fixed")
{
    GasSpec spec{2, 1.0, 5.0};
    auto ens = gibbs_ensemble(enumerate_states(spec, 25.0, 1e-10), 25.0);
    auto before = ens.probabilities;
    (void)adiabatic_energy(ens, 50.0, spec);
    CHECK(ens.probabilities == before);
}

TEST_CASE("strong-coupling ramp is pure lambda rescaling")
{
    const double T = 150.0;
    GasSpec spec{5, 1.0, 1000.0};
    auto ens = gibbs_ensemble(enumerate_states(spec, T, 1e-10), T);
    double ramped = adiabatic_energy(ens, 2000.0, spec);
    double lam = strong_coupling_factor(GasSpec{5, 1.0, 2000.0}) /
                 strong_coupling_factor(spec);
    CHECK(std::abs(ramped - lam * equilibrium_energy(ens)) / ramped <= 1e-3);
}

TEST_CASE("effective temperature follows the lambda ratio")
{
    GasSpec spec{5, 1.0, 200.0};
    CHECK(effective_temperature(7.0, 7.0, 42.0, spec) == doctest::Approx(42.0));
    CHECK(effective_temperature(200.0, 100.0, 150.0, spec) ==
          doctest::Approx(150.0 * 0.8592 / 0.9248).epsilon(1e-12));
    GasSpec one{1, 1.0, 5.0};
    CHECK(effective_temperature(5.0, 80.0, 3.0, one) == doctest::Approx(3.0));
}

TEST_CASE("strong-coupling efficiency closed form")
{
    GasSpec spec{5, 1.0, 1.0};
    CHECK(strong_coupling_efficiency(13.0, 13.0, spec) == 0.0);
    CHECK(strong_coupling_efficiency(100.0, 200.0, spec) ==
          doctest::Approx(1.0 - 0.8592 / 0.9248).epsilon(1e-12));
    GasSpec one{1, 1.0, 1.0};
    CHECK(strong_coupling_efficiency(3.0, 90.0, one) == 0.0);
}

TEST_CASE("degenerate cycle does no work")
{
    CycleSpec spec{GasSpec{3, 1.0, 1.0}, 10.0, 10.0, 20.0, 40.0};
    auto r = run_finite_cycle(spec);
    CHECK(r.work == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.efficiency == 0.0);
}

TEST_CASE("cycle satisfies the first law and the Carnot bound")
{
    for (double ca : {30.0, 100.0, 180.0}) {
        CycleSpec spec{GasSpec{5, 1.0, 1.0}, ca, 200.0, 75.0, 150.0};
        auto r = run_finite_cycle(spec);
        CHECK(r.work == r.Q2 - r.Q4);  // bit-exact as assembled
        CHECK(r.efficiency == doctest::Approx(r.work / r.Q2).epsilon(1e-15));
        CHECK(r.efficiency <= 1.0 - 75.0 / 150.0 + 1e-9);
        CHECK(r.efficiency >= 0.0);
    }
}

TEST_CASE("finite cycle matches a brute-force four-energy assembly")
{
    const double c_A = 1.0, c_B = 5.0, T_A = 5.0, T_C = 50.0;
    CycleSpec spec{GasSpec{2, 1.0, 1.0}, c_A, c_B, T_A, T_C};
    auto r = run_finite_cycle(spec, 1e-10);

    GasSpec gas_a{2, 1.0, c_A}, gas_b{2, 1.0, c_B};
    auto ens_a = gibbs_ensemble(enumerate_states(gas_a, T_A, 1e-12), T_A);
    auto ens_c = gibbs_ensemble(enumerate_states(gas_b, T_C, 1e-12), T_C);
    double e_a = equilibrium_energy(ens_a);
    double e_c = equilibrium_energy(ens_c);
    double e_b = adiabatic_energy(ens_a, c_B, gas_a);   // after ramp-up
    double e_d = adiabatic_energy(ens_c, c_A, gas_b);   // after ramp-down
    double q2 = e_c - e_b, q4 = e_d - e_a;
    CHECK(r.Q2 == doctest::Approx(q2).epsilon(1e-7));
    CHECK(r.Q4 == doctest::Approx(q4).epsilon(1e-7));
    CHECK(r.efficiency == doctest::Approx(1.0 - q4 / q2).epsilon(1e-6));
}

TEST_CASE("efficiency tracks the analytic strong-coupling curve")
{
    // Exact thermal states carry higher-order corrections the quadratic
    // closed form misses; agreement tightens as c_A grows.
    GasSpec gas{5, 1.0, 1.0};
    double prev = 1.0;
    for (double ca : {50.0, 75.0, 100.0, 150.0}) {
        CycleSpec spec{gas, ca, 200.0, 75.0, 150.0};
        auto r = run_finite_cycle(spec);
        CHECK(r.efficiency < prev);
        prev = r.efficiency;
        double analytic = strong_coupling_efficiency(ca, 200.0, gas);
        CHECK(std::abs(r.efficiency - analytic) <= 0.015);
    }
}

TEST_CASE("efficiency is temperature-independent deep in the strong regime")
{
    // c_A, c_B >= 100 N / L
    const double T_C = 150.0;
    std::vector<double> etas;
    for (double frac : {0.2, 0.5, 0.8}) {
        CycleSpec spec{GasSpec{5, 1.0, 1.0}, 500.0, 1000.0, frac * T_C, T_C};
        etas.push_back(run_finite_cycle(spec).efficiency);
    }
    double lo = *std::min_element(etas.begin(), etas.end());
    double hi = *std::max_element(etas.begin(), etas.end());
    CHECK((hi - lo) / hi < 0.01);
}

TEST_CASE("strong-coupling cycle reports effective corner temperatures")
{
    CycleSpec spec{GasSpec{5, 1.0, 1.0}, 500.0, 1000.0, 75.0, 150.0};
    auto r = run_finite_cycle(spec);
    REQUIRE(r.T_B.has_value());
    REQUIRE(r.T_D.has_value());
    GasSpec gas{5, 1.0, 1.0};
    CHECK(*r.T_B == doctest::Approx(effective_temperature(500.0, 1000.0, 75.0, gas)));
    CHECK(*r.T_D == doctest::Approx(effective_temperature(1000.0, 500.0, 150.0, gas)));
    CHECK(*r.T_B > 75.0);
    CHECK(*r.T_D < 150.0);

    // away from strong coupling the corner temperatures are flagged missing
    CycleSpec weak{GasSpec{5, 1.0, 1.0}, 1.0, 5.0, 5.0, 50.0};
    auto rw = run_finite_cycle(weak);
    CHECK(!rw.T_B.has_value());
    CHECK(!rw.T_D.has_value());
}

TEST_CASE("heat intake failure raises not-an-engine")
{
    // ramp heating exceeds the reservoir window: T_C below the post-ramp
    // effective temperature
    CycleSpec spec{GasSpec{5, 1.0, 1.0}, 20.0, 200.0, 75.0, 80.0};
    CHECK_THROWS_AS(run_finite_cycle(spec), NotAnEngine);
}

TEST_CASE("cycle parameter validation")
{
    GasSpec gas{3, 1.0, 1.0};
    CHECK_THROWS_AS(run_finite_cycle(CycleSpec{gas, 5.0, 2.0, 1.0, 2.0}), InvalidInput);
    CHECK_THROWS_AS(run_finite_cycle(CycleSpec{gas, 1.0, 2.0, 3.0, 2.0}), InvalidInput);
    CHECK_THROWS_AS(run_finite_cycle(CycleSpec{gas, 1.0, 2.0, -1.0, 2.0}), InvalidInput);
}
