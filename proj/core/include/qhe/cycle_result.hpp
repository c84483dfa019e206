#ifndef QHE_CYCLE_RESULT_HPP
#define QHE_CYCLE_RESULT_HPP

#include <optional>

namespace qhe {

// Outcome of one four-stroke interaction-driven cycle.
//   Q2   heat absorbed on the hot isochore
//   Q4   heat released on the cold isochore
//   work W = Q2 - Q4 (stored exactly as that difference)
//   efficiency = W / Q2 (0 for the degenerate c_A = c_B cycle)
// T_B and T_D are the post-isentrope temperatures. At finite N they are only
// defined in the strong-coupling regime and are empty otherwise; in the
// thermodynamic limit they come from entropy matching and are always set.
struct CycleResult {
    double Q2 = 0.0;
    double Q4 = 0.0;
    double work = 0.0;
    double efficiency = 0.0;
    std::optional<double> T_B;
    std::optional<double> T_D;
};

}  // namespace qhe

#endif
