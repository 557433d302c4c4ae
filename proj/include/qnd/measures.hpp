#pragma once

#include <utility>
#include <vector>

#include "qnd/entropy.hpp"
#include "qnd/instrument.hpp"

namespace qnd {

// Information-theoretic noise of a measurement for a sharp observable A:
// the conditional entropy of the prepared eigenvalue given the outcome, with
// eigenstates prepared uniformly.
struct NoiseResult {
    double value = 0.0;
    // (p(m), H(A|rho_m)) per outcome; zero-probability outcomes carry 0 bits.
    std::vector<std::pair<double, double>> per_outcome;
};

// Disturbance of a measurement-plus-correction for a sharp observable B:
// the conditional entropy of the prepared B eigenvalue given a subsequent
// projective B outcome.
struct DisturbanceResult {
    double value = 0.0;
    // Joint distribution over (prepared b, measured b'); rows = prepared.
    JointDist joint{2, 2};
    Correction correction_used;
};

// Closed-form route: N = sum_m p_m h(|k_m n_m . a|).
NoiseResult noise(const Povm& povm, const PauliObservable& a);

// Independent route: builds p(m, a) = 1/2 tr[M_m |a><a|] explicitly and
// takes the conditional entropy of the table.
NoiseResult noise_via_joint(const Povm& povm, const PauliObservable& a);
JointDist noise_joint_table(const Povm& povm, const PauliObservable& a);

// Born-rule route: prepare the B eigenstates uniformly, run the instrument,
// apply the per-outcome correction, measure B again, tabulate p(b', b).
DisturbanceResult disturbance_corrected(const Instrument& inst, const PauliObservable& b,
                                        const Correction& corr);

// Average post-measurement Bloch vector sum_m p_m r_m of a Lueders
// instrument fed the +b eigenstate; r_m is the per-outcome image summand.
Vec3 luders_average_post(const Povm& povm, const PauliObservable& b);

// Uncorrected disturbance of the Lueders instrument of `povm`:
// h(|r_+ . b|), assembled analytically (no instrument application).
DisturbanceResult disturbance_identity_lueders(const Povm& povm, const PauliObservable& b);

// Post-measurement averages of a purity-preserving instrument: the input
// states +/-b map to Bloch vectors +/-symmetric + offset.
struct PurityPreservingPost {
    Vec3 symmetric;  // rotated Lueders part; flips sign with the input
    Vec3 offset;     // sum_m p_m k_m (U_m n_m); input-independent
};
PurityPreservingPost pp_average_post(const Povm& povm, const std::vector<Rotation>& unitaries,
                                     const PauliObservable& b);

// Closed form for the uncorrected purity-preserving disturbance,
// sum_{±} (1 ± offset.b)/2 h(|symmetric.b| / (1 ± offset.b)); a branch with
// vanishing weight is dropped (its contribution tends to 0).
double pp_disturbance_formula(const PurityPreservingPost& post, const PauliObservable& b);

// Uncorrected disturbance of the purity-preserving instrument with the given
// per-outcome unitaries, assembled analytically.
DisturbanceResult disturbance_identity_pp(const Povm& povm,
                                          const std::vector<Rotation>& unitaries,
                                          const PauliObservable& b);

enum class OptimizeStrategy { heuristic, refine };

// Minimum of disturbance_corrected over the searched correction family:
// per-outcome rotations (aligned heuristically, optionally refined by
// simplex descent), plus per-outcome prepare-state maps for dichotomic
// instruments. An upper bound on the true optimal-correction disturbance.
DisturbanceResult disturbance_optimized(const Instrument& inst, const PauliObservable& b,
                                        OptimizeStrategy strategy);

// State-independent lower bound on noise sums for a pair of sharp qubit
// observables: -log2 max |<a|b>|^2 = -log2((1 + |a.b|)/2).
inline double maassen_uffink_bound(double dot) {
    return -std::log2(0.5 * (1.0 + std::abs(dot)));
}

}  // namespace qnd
