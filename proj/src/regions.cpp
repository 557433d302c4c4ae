#include "qnd/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qnd/measures.hpp"

namespace qnd {

namespace {

std::string format_meta(const char* key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s=%.17g", key, value);
    return buf;
}

using Pt = std::pair<double, double>;

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Pt> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Pt& p : pts) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);  // counterclockwise, first point not repeated
    return hull;
}

// Unit Bloch directions in the plane spanned by the two observable axes.
struct PlaneFrame {
    Vec3 a_hat;
    Vec3 b_perp;  // unit, orthogonal to a, in the a-b plane
    double dot;

    explicit PlaneFrame(const ObservablePair& pair) : a_hat(pair.a.axis()), dot(pair.dot) {
        const Vec3 residue = pair.b.axis() - a_hat * dot;
        const double n = residue.norm();
        b_perp = n > 1e-9 ? residue / n : any_orthogonal(a_hat);
    }

    Vec3 direction(double psi) const {
        return a_hat * std::cos(psi) + b_perp * std::sin(psi);
    }
};

// Entropy pair of the pure state along `dir`.
Pt entropy_point(const ObservablePair& pair, const Vec3& dir) {
    return {binary_entropy(std::abs(pair.a.axis().dot(dir))),
            binary_entropy(std::abs(pair.b.axis().dot(dir)))};
}

// Overlap-plane arc bounding the achievable (|a.r|, |b.r|) pairs:
// u^2 + v^2 - 2|a.b| uv = 1 - (a.b)^2, first quadrant.
struct OverlapArc {
    double kappa;
    double tau0;

    explicit OverlapArc(double dot) : kappa(std::min(std::abs(dot), 1.0 - 1e-15)) {
        tau0 = std::atan(std::sqrt((1.0 + kappa) / (1.0 - kappa)));
    }

    Pt overlaps(double tau) const {
        const double cp = std::sqrt(1.0 + kappa) * std::cos(tau);
        const double sq = std::sqrt(1.0 - kappa) * std::sin(tau);
        const double inv = 1.0 / std::numbers::sqrt2;
        return {std::max((cp + sq) * inv, 0.0), std::max((cp - sq) * inv, 0.0)};
    }
};

}  // namespace

const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::prep: return "prep";
        case RegionKind::nn: return "nn";
        case RegionKind::nd: return "nd";
    }
    return "nd";
}

RegionKind region_kind_from_string(const std::string& s) {
    if (s == "prep") return RegionKind::prep;
    if (s == "nn") return RegionKind::nn;
    if (s == "nd") return RegionKind::nd;
    throw ParseError("kind", "unknown region kind '" + s + "'");
}

double prep_relation_entropic(const ObservablePair& pair, double hA, double hB) {
    const double ga = binary_entropy_inverse(hA);
    const double gb = binary_entropy_inverse(hB);
    const double c = std::abs(pair.dot);
    return ga * ga + gb * gb - 2.0 * c * ga * gb - (1.0 - pair.dot * pair.dot);
}

double prep_relation_sd(const ObservablePair& pair, const State& rho) {
    const double oa = pair.a.axis().dot(rho.bloch());
    const double ob = pair.b.axis().dot(rho.bloch());
    const double var_a = 1.0 - oa * oa;
    const double var_b = 1.0 - ob * ob;
    return var_a + var_b + 2.0 * std::abs(pair.dot) * std::abs(oa) * std::abs(ob) -
           (1.0 + pair.dot * pair.dot);
}

double nn_dichotomic_relation(double hA, double hB) {
    const double ga = binary_entropy_inverse(hA);
    const double gb = binary_entropy_inverse(hB);
    return ga * ga + gb * gb - 1.0;
}

double luders_relation(double n, double d) { return nn_dichotomic_relation(n, d); }

std::vector<RegionPoint> prep_boundary_points(const ObservablePair& pair,
                                              std::size_t samples) {
    if (samples < 2) throw DomainError("boundary sampling needs at least 2 points");
    const OverlapArc arc(pair.dot);
    std::vector<RegionPoint> out;
    out.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau =
            -arc.tau0 + 2.0 * arc.tau0 * static_cast<double>(i) / (samples - 1);
        const Pt uv = arc.overlaps(tau);
        out.push_back({binary_entropy(uv.first), binary_entropy(uv.second), RegionKind::prep,
                       format_meta("tau", tau)});
    }
    return out;
}

std::vector<Pt> nn_hull_polygon(const ObservablePair& pair, std::size_t min_vertices) {
    const std::size_t samples = std::max<std::size_t>(min_vertices, 512);
    const OverlapArc arc(pair.dot);
    std::vector<Pt> pts;
    pts.reserve(samples + 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double tau =
            -arc.tau0 + 2.0 * arc.tau0 * static_cast<double>(i) / (samples - 1);
        const Pt uv = arc.overlaps(tau);
        pts.push_back({binary_entropy(uv.first), binary_entropy(uv.second)});
    }
    pts.push_back({1.0, 1.0});
    return convex_hull(std::move(pts));
}

bool nn_region_contains(const ObservablePair& pair, const RegionPoint& p) {
    if (p.x < -kClampBand || p.y < -kClampBand || p.x > 1.0 + kClampBand ||
        p.y > 1.0 + kClampBand)
        return false;
    if (pair.orthogonal()) return p.x + p.y >= 1.0 - 1e-9;
    if (std::abs(pair.dot) >= kConvexityThreshold)
        return prep_relation_entropic(pair, clamp01(p.x, "x"), clamp01(p.y, "y")) <= 1e-9;
    const std::vector<Pt> hull = nn_hull_polygon(pair);
    constexpr double kSlack = 1e-5;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Pt& u = hull[i];
        const Pt& v = hull[(i + 1) % hull.size()];
        const double len = std::hypot(v.first - u.first, v.second - u.second);
        if (len < 1e-15) continue;
        if (cross(u, v, {p.x, p.y}) < -kSlack * len) return false;
    }
    return true;
}

std::vector<RegionPoint> nn_boundary_points(const ObservablePair& pair, std::size_t samples) {
    if (samples < 2) throw DomainError("boundary sampling needs at least 2 points");
    std::vector<RegionPoint> out;
    out.reserve(samples);
    if (pair.orthogonal()) {
        for (std::size_t i = 0; i < samples; ++i) {
            const double t = static_cast<double>(i) / (samples - 1);
            out.push_back({t, 1.0 - t, RegionKind::nn, format_meta("t", t)});
        }
        return out;
    }
    if (std::abs(pair.dot) >= kConvexityThreshold) {
        for (RegionPoint& p : prep_boundary_points(pair, samples)) {
            p.kind = RegionKind::nn;
            out.push_back(std::move(p));
        }
        return out;
    }
    // Non-convex band: resample the lower-left chain of the hull by arc
    // length. Counterclockwise from the leftmost vertex, the chain descends
    // strictly until the bottom vertex; past it the hull turns up its
    // right side.
    const std::vector<Pt> hull = nn_hull_polygon(pair, std::max<std::size_t>(4 * samples, 512));
    std::size_t start = 0;
    for (std::size_t i = 1; i < hull.size(); ++i)
        if (hull[i] < hull[start]) start = i;
    std::vector<Pt> chain{hull[start]};
    for (std::size_t k = 1; k < hull.size(); ++k) {
        const Pt& p = hull[(start + k) % hull.size()];
        if (p.second >= chain.back().second) break;
        chain.push_back(p);
    }
    if (chain.size() < 2) {
        out.assign(samples, {chain[0].first, chain[0].second, RegionKind::nn, "s=0"});
        return out;
    }
    std::vector<double> cum{0.0};
    for (std::size_t i = 1; i < chain.size(); ++i)
        cum.push_back(cum.back() + std::hypot(chain[i].first - chain[i - 1].first,
                                              chain[i].second - chain[i - 1].second));
    const double total = cum.back();
    std::size_t seg = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double target = total * static_cast<double>(i) / (samples - 1);
        while (seg + 1 < cum.size() - 1 && cum[seg + 1] < target) ++seg;
        const double span = cum[seg + 1] - cum[seg];
        const double w = span > 0.0 ? (target - cum[seg]) / span : 0.0;
        out.push_back({chain[seg].first + w * (chain[seg + 1].first - chain[seg].first),
                       chain[seg].second + w * (chain[seg + 1].second - chain[seg].second),
                       RegionKind::nn, format_meta("s", target)});
    }
    return out;
}

namespace {

// Unit in-plane Bloch direction realizing the overlap pair (u, v) with
// u = |a.r|; the sign of b.r follows the sign of a.b so the solution lands
// on the achievable branch.
Vec3 direction_for_overlaps(const PlaneFrame& frame, double u, double v) {
    const double c = frame.dot;
    const double denom = std::sqrt(std::max(1.0 - c * c, 1e-30));
    const double sign = c >= 0.0 ? 1.0 : -1.0;
    const double beta = sign * (v - std::abs(c) * u) / denom;
    return frame.a_hat * u + frame.b_perp * beta;
}

Povm dichotomic_from_direction(const Vec3& r) {
    Vec3 v = r;
    const double n = v.norm();
    if (n > 1.0) v = v / n;  // roundoff clamp
    return Povm{{HermitianOp{0.5, v * 0.5}, HermitianOp{0.5, v * -0.5}}};
}

Povm four_outcome_mixture(const Vec3& r1, const Vec3& r2, double q) {
    return Povm{{HermitianOp{0.5 * q, r1 * (0.5 * q)}, HermitianOp{0.5 * q, r1 * (-0.5 * q)},
                 HermitianOp{0.5 * (1.0 - q), r2 * (0.5 * (1.0 - q))},
                 HermitianOp{0.5 * (1.0 - q), r2 * (-0.5 * (1.0 - q))}}};
}

}  // namespace

Povm nn_saturating_povm(const ObservablePair& pair, const RegionPoint& target) {
    if (!nn_region_contains(pair, target))
        throw RegionTargetError("target noise pair lies outside the noise-noise region");
    const double x = clamp01(target.x, "target x");
    const double y = clamp01(target.y, "target y");
    const PlaneFrame frame(pair);

    // Inside the preparation region: one dichotomic measurement suffices.
    if (prep_relation_entropic(pair, x, y) <= 1e-9) {
        const double u = binary_entropy_inverse(x);
        const double v = binary_entropy_inverse(y);
        return dichotomic_from_direction(direction_for_overlaps(frame, u, v));
    }

    // Orthogonal hull points sit on the line x + y = 1; mix the two
    // projective measurements with weight y on the a-projectors.
    if (pair.orthogonal() && std::abs(x + y - 1.0) <= 1e-9) {
        const double q = y;
        return four_outcome_mixture(pair.a.axis(), pair.b.axis(), q);
    }

    // General hull point: find a chord of the preparation boundary through
    // the target and mix the two pure-direction measurements at its ends.
    const Pt t{x, y};
    auto point_at = [&](double psi) { return entropy_point(pair, frame.direction(psi)); };
    constexpr int kGrid = 768;
    for (int i = 0; i < kGrid; ++i) {
        const double psi1 = std::numbers::pi * i / kGrid;
        const Pt p1 = point_at(psi1);
        const double d1 = std::hypot(p1.first - t.first, p1.second - t.second);
        if (d1 < 1e-9) return dichotomic_from_direction(frame.direction(psi1));
        double prev_psi = -1.0, prev_cross = 0.0;
        for (int j = 0; j <= kGrid; ++j) {
            const double psi2 = std::numbers::pi * j / kGrid;
            const Pt p2 = point_at(psi2);
            const double cr = cross(p1, t, p2);
            if (j > 0 && ((cr <= 0.0) != (prev_cross <= 0.0))) {
                double lo = prev_psi, hi = psi2;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double cm = cross(p1, t, point_at(mid));
                    ((cm <= 0.0) == (prev_cross <= 0.0) ? lo : hi) = mid;
                }
                const Pt p2b = point_at(0.5 * (lo + hi));
                const double dx = p1.first - p2b.first, dy = p1.second - p2b.second;
                const double len2 = dx * dx + dy * dy;
                if (len2 > 1e-18) {
                    const double q = ((t.first - p2b.first) * dx + (t.second - p2b.second) * dy) /
                                     len2;
                    if (q > -1e-9 && q < 1.0 + 1e-9) {
                        const double qc = std::clamp(q, 0.0, 1.0);
                        const Pt hit{qc * p1.first + (1.0 - qc) * p2b.first,
                                     qc * p1.second + (1.0 - qc) * p2b.second};
                        if (std::hypot(hit.first - t.first, hit.second - t.second) < 5e-7)
                            return four_outcome_mixture(frame.direction(psi1),
                                                        frame.direction(0.5 * (lo + hi)), qc);
                    }
                }
            }
            prev_psi = psi2;
            prev_cross = cr;
        }
    }
    throw RegionTargetError("no boundary chord through the target was found");
}

ThreeOutcomeFamily three_outcome_family(double theta) {
    if (theta < -1e-12 || theta > 0.5 * std::numbers::pi + 1e-12)
        throw DomainError("family parameter must lie in [0, pi/2]");
    theta = std::clamp(theta, 0.0, 0.5 * std::numbers::pi);
    const double ct = std::cos(theta), st = std::sin(theta);

    ThreeOutcomeFamily fam;
    fam.theta = theta;
    const double p_side = 1.0 / (2.0 * (1.0 + ct));
    const double p_zero = ct / (1.0 + ct);
    const Vec3 n_minus{-ct, 0.0, -st};
    const Vec3 n_zero{1.0, 0.0, 0.0};
    const Vec3 n_plus{-ct, 0.0, st};
    fam.povm.elements = {HermitianOp{p_side, n_minus * p_side},
                         HermitianOp{p_zero, n_zero * p_zero},
                         HermitianOp{p_side, n_plus * p_side}};
    fam.instrument = Instrument::measure_prepare(
        fam.povm, {State(n_minus), State(n_zero), State(n_plus)});
    const State minus_x = State(-kXAxis);
    fam.correction.per_outcome = {CorrPrepare{minus_x}, CorrIdentity{}, CorrPrepare{minus_x}};
    fam.noise = (ct + binary_entropy(st)) / (1.0 + ct);
    fam.disturbance = binary_entropy(ct) / (1.0 + ct);
    return fam;
}

std::vector<RegionPoint> nd_boundary_curve(std::size_t samples) {
    if (samples < 2) throw DomainError("curve sampling needs at least 2 points");
    std::vector<RegionPoint> out;
    out.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double theta = 0.5 * std::numbers::pi * static_cast<double>(i) / (samples - 1);
        const ThreeOutcomeFamily fam = three_outcome_family(theta);
        out.push_back({fam.noise, fam.disturbance, RegionKind::nd, format_meta("theta", theta)});
    }
    return out;
}

double nd_curve_disturbance_at(double noise) {
    noise = std::clamp(noise, 0.0, 1.0);
    // The frontier noise decreases strictly from 1 (theta = 0) to 0.
    double lo = 0.0, hi = 0.5 * std::numbers::pi;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double ct = std::cos(mid);
        const double n = (ct + binary_entropy(std::sin(mid))) / (1.0 + ct);
        (n >= noise ? lo : hi) = mid;
    }
    const double theta = 0.5 * (lo + hi);
    return binary_entropy(std::cos(theta)) / (1.0 + std::cos(theta));
}

bool nd_curve_admits(double n, double d, double slack) {
    return d >= nd_curve_disturbance_at(n) - slack;
}

DichotomicViolation dichotomic_violation_example() {
    DichotomicViolation v;
    v.instrument = Instrument::lueders(dichotomic_example_povm());
    v.correction.per_outcome = {CorrPrepare{State(kXAxis)}, CorrIdentity{}};
    v.noise = noise(v.instrument.povm, PauliObservable::z()).value;
    v.disturbance =
        disturbance_corrected(v.instrument, PauliObservable::x(), v.correction).value;
    const double gn = binary_entropy_inverse(v.noise);
    const double gd = binary_entropy_inverse(v.disturbance);
    v.gsum = gn * gn + gd * gd;
    return v;
}

Povm luders_saturating_povm(double s, double t) {
    const double gs = binary_entropy_inverse(clamp01(s, "target noise"));
    const double gt = binary_entropy_inverse(clamp01(t, "target disturbance"));
    const double rest = 1.0 - gs * gs - gt * gt;
    if (rest < -1e-9)
        throw RegionTargetError(
            "target pair lies outside the square-root-dynamics region g(s)^2 + g(t)^2 <= 1");
    const Vec3 w{0.0, std::sqrt(std::max(rest, 0.0)), gs};
    return Povm{{HermitianOp{0.5, w * 0.5}, HermitianOp{0.5, w * -0.5}}};
}

WeightedEnsemble double_ensemble(const WeightedEnsemble& e) {
    if (e.weights.size() != e.states.size())
        throw ShapeError("ensemble weights and states differ in length");
    double total = 0.0;
    for (double w : e.weights) {
        if (w < -kClampBand) throw DomainError("ensemble weight is negative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("ensemble weights do not sum to 1");
    WeightedEnsemble out;
    out.weights.reserve(2 * e.weights.size());
    out.states.reserve(2 * e.states.size());
    for (std::size_t i = 0; i < e.weights.size(); ++i) {
        out.weights.push_back(0.5 * e.weights[i]);
        out.states.push_back(e.states[i]);
        out.weights.push_back(0.5 * e.weights[i]);
        out.states.push_back(State(-e.states[i].bloch()));
    }
    return out;
}

}  // namespace qnd
