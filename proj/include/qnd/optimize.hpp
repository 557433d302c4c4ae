#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qnd/instrument.hpp"

namespace qnd {

struct NelderMeadOptions {
    int max_evals = 200;
    double ftol = 1e-10;   // stop when the simplex value spread drops below this
    double step = 0.5;     // initial simplex edge
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int evaluations = 0;
};

// Derivative-free simplex descent with the standard reflection/expansion/
// contraction/shrink coefficients 1, 2, 1/2, 1/2.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadOptions& opts);

enum class OptimizeStrategyKind { heuristic, nelder_refine, grid };

struct OptimizeReport {
    Correction best;
    double value = 0.0;
    long evaluations = 0;
    OptimizeStrategyKind strategy = OptimizeStrategyKind::heuristic;
};

// Alignment heuristic: for each outcome, rotate the square-root-dynamics
// image summand r_m = (n_m.b) n_m + sqrt(1-k_m^2)(b - (n_m.b) n_m) onto the
// positive b-axis (identity when the summand vanishes).
Correction heuristic_alignment(const Povm& povm, const PauliObservable& b);

// Simplex refinement of the rotation entries of `init` (prepare entries are
// held fixed), started from init and 8 jittered restarts sharing `budget`
// total objective evaluations. Never returns a value worse than init's.
OptimizeReport refine_corrections(const Instrument& inst, const PauliObservable& b,
                                  const Correction& init, int budget);

struct ViolationSearchResult {
    Instrument instrument;
    Correction correction;
    double noise_z = 0.0;
    double disturbance_x = 0.0;
    double gsum = 0.0;  // g(N)^2 + g(D)^2
};

// Search for dichotomic instruments beating the dichotomic noise-disturbance
// tradeoff g(N)^2 + g(D)^2 <= 1. Trial 0 evaluates the known violating
// instrument so the search always dominates that fixed point; the remaining
// trials draw mixed-rank dichotomic POVMs and optimize corrections over
// rotations and prepare-state maps.
ViolationSearchResult dichotomic_violation_search(int trials, std::uint64_t seed);

}  // namespace qnd
