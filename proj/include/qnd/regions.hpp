#pragma once

#include <string>
#include <vector>

#include "qnd/entropy.hpp"
#include "qnd/instrument.hpp"
#include "qnd/povm.hpp"

namespace qnd {

enum class RegionKind { prep, nn, nd };

const char* to_string(RegionKind k);
RegionKind region_kind_from_string(const std::string& s);

// A labelled point of an uncertainty region, in bits.
struct RegionPoint {
    double x = 0.0;
    double y = 0.0;
    RegionKind kind = RegionKind::nd;
    std::string meta;
};

struct ObservablePair {
    PauliObservable a;
    PauliObservable b;
    double dot;  // a.b, cached

    ObservablePair(const PauliObservable& a_, const PauliObservable& b_)
        : a(a_), b(b_), dot(a_.axis().dot(b_.axis())) {}

    static ObservablePair zx() {
        return ObservablePair(PauliObservable::z(), PauliObservable::x());
    }
    bool orthogonal(double eps = 1e-12) const { return std::abs(dot) < eps; }
};

// Entropic preparation relation residual,
//   g(hA)^2 + g(hB)^2 - 2|a.b| g(hA) g(hB) - (1 - (a.b)^2);
// nonpositive exactly on the achievable entropy pairs, zero on the boundary.
double prep_relation_entropic(const ObservablePair& pair, double hA, double hB);

// Standard-deviation preparation relation, LHS - RHS of
//   dA^2 + dB^2 + 2|a.b| sqrt(1-dA^2) sqrt(1-dB^2) >= 1 + (a.b)^2;
// nonnegative for every valid state.
double prep_relation_sd(const ObservablePair& pair, const State& rho);

// Dichotomic noise-noise tradeoff residual for orthogonal observables:
// g(hA)^2 + g(hB)^2 - 1 (nonpositive for dichotomic measurements).
double nn_dichotomic_relation(double hA, double hB);

// Square-root-dynamics noise-disturbance residual: g(n)^2 + g(d)^2 - 1,
// nonpositive for every uncorrected Lueders instrument.
double luders_relation(double n, double d);

// The entropy region is convex for |a.b| above this (approximate) threshold
// and non-convex below it; orthogonal pairs have an exact linear hull bound.
inline constexpr double kConvexityThreshold = 0.391;

// Boundary of the preparation region: points with zero entropic residual.
std::vector<RegionPoint> prep_boundary_points(const ObservablePair& pair, std::size_t samples);

// Convex hull of the preparation region (the achievable noise-noise set),
// as a counterclockwise polygon. At least min_vertices boundary samples.
std::vector<std::pair<double, double>> nn_hull_polygon(const ObservablePair& pair,
                                                       std::size_t min_vertices = 512);

// Noise-noise region membership: linear bound for orthogonal pairs, the
// entropic-relation predicate where the region is convex, polygonal hull
// membership (1e-5 slack) in the non-convex band.
bool nn_region_contains(const ObservablePair& pair, const RegionPoint& p);

// Lower boundary of the noise-noise region, sampled for plotting.
std::vector<RegionPoint> nn_boundary_points(const ObservablePair& pair, std::size_t samples);

// A POVM whose noise pair hits `target` (within 1e-6): a dichotomic
// measurement along the solved Bloch direction for targets inside the
// preparation region, a four-outcome mixture of two such measurements for
// hull points outside it.
Povm nn_saturating_povm(const ObservablePair& pair, const RegionPoint& target);

// Three-outcome family tracing the conjectured noise-disturbance frontier
// for (sigma_z, sigma_x): rank-one POVM in the xz-plane at opening angle
// theta in [0, pi/2], measure-and-prepare update onto the element axes, and
// the correction that maps the two tilted outcomes onto the -x axis.
struct ThreeOutcomeFamily {
    double theta = 0.0;
    Povm povm;
    Instrument instrument;
    Correction correction;
    double noise = 0.0;        // (cos t + h(sin t)) / (1 + cos t)
    double disturbance = 0.0;  // h(cos t) / (1 + cos t)
};
ThreeOutcomeFamily three_outcome_family(double theta);

// The conjectured noise-disturbance frontier, sampled on a uniform theta
// grid over [0, pi/2] (at least 2 samples).
std::vector<RegionPoint> nd_boundary_curve(std::size_t samples);

// Disturbance of the frontier at the given noise (the frontier is strictly
// decreasing in noise); values outside [0,1] are clamped.
double nd_curve_disturbance_at(double noise);

// True when (n, d) lies on or above the frontier up to `slack`.
bool nd_curve_admits(double n, double d, double slack = 1e-9);

// Fixed dichotomic POVM with one rank-one and one rank-two element that,
// under square-root dynamics and a prepare-|+x> correction on the sharp
// outcome, beats the dichotomic tradeoff.
inline Povm dichotomic_example_povm() {
    const Vec3 n = (kXAxis + kZAxis).normalized();
    return Povm{{HermitianOp{0.25, n * 0.25}, HermitianOp{0.75, n * -0.25}}};
}

struct DichotomicViolation {
    Instrument instrument;
    Correction correction;
    double noise = 0.0;
    double disturbance = 0.0;
    double gsum = 0.0;
};
// The fixed violating instrument/correction with all quantities evaluated
// through the measures layer (nothing hardcoded).
DichotomicViolation dichotomic_violation_example();

// Dichotomic POVM reaching noise s and uncorrected Lueders disturbance t,
// for any (s, t) with g(s)^2 + g(t)^2 <= 1:
//   M_± = 1/2 (1 ± (g(s) sigma_z + sqrt(1 - g(s)^2 - g(t)^2) sigma_y)).
Povm luders_saturating_povm(double s, double t);

// Weighted ensembles of states, and the doubling that restores the
// maximally-mixed average while preserving the entropy pair.
struct WeightedEnsemble {
    std::vector<double> weights;
    std::vector<State> states;
};
WeightedEnsemble double_ensemble(const WeightedEnsemble& e);

}  // namespace qnd
