#ifndef QHE_CYCLE_HPP
#define QHE_CYCLE_HPP

#include <string>
#include <utility>
#include <vector>

#include "qhe/cycle_result.hpp"
#include "qhe/tba.hpp"

namespace qhe {

// Engine cycle in the thermodynamic limit, pinned by density rather than
// particle number. box_length is a pure scale for extensive quantities.
struct TbaCycleSpec {
    double c_A = 0.0;
    double c_B = 0.0;
    double T_A = 0.0;
    double T_C = 0.0;
    double density = 0.0;    // n = N/L
    double box_length = 1.0;

    void validate() const;
};

// Find T with s(c_target, n, T) = s_target to 1e-9 relative. Density is held
// fixed by re-inverting mu at every trial temperature. T_bracket seeds the
// search and is expanded geometrically when it does not straddle the target.
double match_entropy_temperature(double c_target, double s_target, double n,
                                 std::pair<double, double> T_bracket,
                                 const GridConfig& grid = {});

// Four-stroke cycle via Yang-Yang thermodynamics: T_B, T_D from entropy
// matching, heats from energy-density differences at the matched corners.
CycleResult run_tba_cycle(const TbaCycleSpec& spec, const GridConfig& grid = {});

struct DensityScanRow {
    double density = 0.0;
    double efficiency = 0.0;
    double work_per_particle = 0.0;
    bool ok = false;
    std::string error;
};

// One run_tba_cycle per density, rows in input order. Per-row failures are
// recorded and the scan continues.
std::vector<DensityScanRow> density_scan(const TbaCycleSpec& base,
                                         const std::vector<double>& n_values,
                                         const GridConfig& grid = {}, int threads = 1);

struct PhaseMapPoint {
    double chemical_potential = 0.0;
    double temperature = 0.0;
    double specific_heat = 0.0;
    double density = 0.0;
    double entropy_density = 0.0;
    bool ok = false;
    std::string error;
};

// Rectangular grid of specific-heat evaluations, row-major with T as the
// outer (slow) index and mu inner. Failed cells are recorded as missing.
std::vector<PhaseMapPoint> phase_map(double c, std::pair<double, double> mu_range,
                                     std::pair<double, double> T_range,
                                     std::pair<int, int> resolution /* (n_mu, n_T) */,
                                     const GridConfig& grid = {}, int threads = 1);

struct CycleCorner {
    char label = ' ';  // A, B, C or D
    double chemical_potential = 0.0;
    double temperature = 0.0;
};

// The four (mu, T) corner points of a cycle, for overlay on the phase map.
std::vector<CycleCorner> cycle_trajectory(const TbaCycleSpec& spec,
                                          const GridConfig& grid = {});

}  // namespace qhe

#endif
