#include "qnd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnd/entropy.hpp"
#include "qnd/measures.hpp"
#include "qnd/parallel.hpp"
#include "qnd/regions.hpp"
#include "qnd/rng.hpp"
#include "qnd/sampling.hpp"

namespace qnd {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadOptions& opts) {
    const std::size_t dim = x0.size();
    NelderMeadResult best{x0, 0.0, 0};

    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        ++best.evaluations;
        if (best.evaluations == 1 || v < best.fx) {
            best.fx = v;
            best.x = x;
        }
        return v;
    };

    if (dim == 0) {
        eval(x0);
        return best;
    }

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> fs(dim + 1);
    fs[0] = eval(simplex[0]);
    for (std::size_t i = 0; i < dim; ++i) {
        simplex[i + 1][i] += opts.step;
        if (best.evaluations >= opts.max_evals) return best;
        fs[i + 1] = eval(simplex[i + 1]);
    }

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    while (best.evaluations < opts.max_evals) {
        // Order: best first, worst last.
        std::vector<std::size_t> order(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        if (fs[order[dim]] - fs[order[0]] < opts.ftol) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[order[i]][d] / dim;
        const std::size_t worst = order[dim];

        auto blend = [&](double coef) {
            std::vector<double> x(dim);
            for (std::size_t d = 0; d < dim; ++d)
                x[d] = centroid[d] + coef * (centroid[d] - simplex[worst][d]);
            return x;
        };

        const std::vector<double> xr = blend(kReflect);
        const double fr = eval(xr);
        if (best.evaluations >= opts.max_evals) break;

        if (fr < fs[order[0]]) {
            const std::vector<double> xe = blend(kReflect * kExpand);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fs[worst] = fe;
            } else {
                simplex[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr < fs[order[dim - 1]]) {
            simplex[worst] = xr;
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            const std::vector<double> xc = blend(outside ? kReflect * kContract : -kContract);
            const double fc = eval(xc);
            if (fc < (outside ? fr : fs[worst])) {
                simplex[worst] = xc;
                fs[worst] = fc;
            } else {
                for (std::size_t i = 1; i <= dim; ++i) {
                    const std::size_t idx = order[i];
                    for (std::size_t d = 0; d < dim; ++d)
                        simplex[idx][d] = simplex[order[0]][d] +
                                          kShrink * (simplex[idx][d] - simplex[order[0]][d]);
                    if (best.evaluations >= opts.max_evals) return best;
                    fs[idx] = eval(simplex[idx]);
                }
            }
        }
    }
    return best;
}

Correction heuristic_alignment(const Povm& povm, const PauliObservable& b) {
    require_valid(povm);
    Correction corr;
    corr.per_outcome.reserve(povm.size());
    for (const HermitianOp& m : povm.elements) {
        const ElementParam e = element_param(m);
        const double along = e.n.dot(b.axis());
        const Vec3 parallel = e.n * along;
        const Vec3 summand =
            parallel + std::sqrt(std::max(1.0 - e.k * e.k, 0.0)) * (b.axis() - parallel);
        if (e.p <= kProbTol || summand.norm() < 1e-9) {
            corr.per_outcome.push_back(CorrIdentity{});
            continue;
        }
        const Rotation rot = Rotation::taking(summand, b.axis());
        if (rot.is_identity())
            corr.per_outcome.push_back(CorrIdentity{});
        else
            corr.per_outcome.push_back(CorrRotate{rot});
    }
    return corr;
}

namespace {

bool in_xz_plane(const Vec3& v) { return std::abs(v.y) < 1e-12; }

bool rotation_about_y(const Rotation& r) {
    return r.is_identity() || std::abs(std::abs(r.axis().y) - 1.0) < 1e-12;
}

// Signed angle about +y equivalent to the rotation (valid when
// rotation_about_y holds).
double y_angle(const Rotation& r) {
    if (r.is_identity()) return 0.0;
    return r.axis().y > 0.0 ? r.angle() : -r.angle();
}

bool problem_in_plane(const Instrument& inst, const PauliObservable& b,
                      const Correction& init) {
    if (!in_xz_plane(b.axis())) return false;
    for (const HermitianOp& m : inst.povm.elements)
        if (!in_xz_plane(m.v)) return false;
    if (const auto* pp = std::get_if<PurityPreservingUpdate>(&inst.update)) {
        for (const Rotation& r : pp->unitaries)
            if (!rotation_about_y(r)) return false;
    } else if (const auto* mp = std::get_if<MeasurePrepareUpdate>(&inst.update)) {
        for (const State& s : mp->states)
            if (!in_xz_plane(s.bloch())) return false;
    } else if (std::holds_alternative<KrausUpdate>(inst.update)) {
        return false;
    }
    for (const CorrectionOp& op : init.per_outcome) {
        if (const auto* rot = std::get_if<CorrRotate>(&op)) {
            if (!rotation_about_y(rot->rotation)) return false;
        } else if (const auto* prep = std::get_if<CorrPrepare>(&op)) {
            if (!in_xz_plane(prep->state.bloch())) return false;
        }
    }
    return true;
}

}  // namespace

OptimizeReport refine_corrections(const Instrument& inst, const PauliObservable& b,
                                  const Correction& init, int budget) {
    require_valid(inst);
    if (init.size() != inst.outcomes())
        throw ShapeError("initial correction does not match the instrument outcome count");
    if (budget < 10) throw BudgetError("refinement budget must be at least 10 evaluations");

    // Prepare entries are frozen; rotation/identity entries are the search
    // coordinates (one y-angle in the plane-restricted case, an axis-angle
    // 3-vector otherwise).
    std::vector<std::size_t> slots;
    for (std::size_t m = 0; m < init.size(); ++m)
        if (!std::holds_alternative<CorrPrepare>(init.per_outcome[m])) slots.push_back(m);

    const bool plane = problem_in_plane(inst, b, init);
    const std::size_t dim = slots.size() * (plane ? 1 : 3);

    OptimizeReport report;
    report.strategy = OptimizeStrategyKind::nelder_refine;
    report.best = init;
    report.value = disturbance_corrected(inst, b, init).value;
    report.evaluations = 1;
    if (dim == 0) return report;

    std::vector<double> x0(dim, 0.0);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        const CorrectionOp& op = init.per_outcome[slots[s]];
        const auto* rot = std::get_if<CorrRotate>(&op);
        if (!rot) continue;
        if (plane) {
            x0[s] = y_angle(rot->rotation);
        } else {
            double angle = rot->rotation.angle();
            Vec3 axis = rot->rotation.axis();
            if (angle > std::numbers::pi) {
                angle = 2.0 * std::numbers::pi - angle;
                axis = -axis;
            }
            x0[3 * s + 0] = axis.x * angle;
            x0[3 * s + 1] = axis.y * angle;
            x0[3 * s + 2] = axis.z * angle;
        }
    }

    auto decode = [&](const std::vector<double>& x) {
        Correction corr = init;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            Rotation rot;
            if (plane) {
                rot = Rotation::about_y(x[s]);
            } else {
                const Vec3 w{x[3 * s], x[3 * s + 1], x[3 * s + 2]};
                const double angle = w.norm();
                rot = angle < 1e-12 ? Rotation::identity() : Rotation(w / angle, angle);
            }
            corr.per_outcome[slots[s]] =
                rot.is_identity() ? CorrectionOp{CorrIdentity{}} : CorrectionOp{CorrRotate{rot}};
        }
        return corr;
    };

    auto objective = [&](const std::vector<double>& x) {
        return disturbance_corrected(inst, b, decode(x)).value;
    };

    constexpr int kRestarts = 8;
    NelderMeadOptions opts;
    opts.max_evals = std::max(budget / (kRestarts + 1), 1);
    opts.ftol = 1e-10;

    std::vector<double> best_x = x0;
    double best_f = report.value;
    RandomStream jitter(0x51a3u);
    for (int run = 0; run <= kRestarts; ++run) {
        std::vector<double> start = x0;
        if (run > 0)
            for (double& v : start) v += jitter.uniform(-0.5, 0.5);
        const NelderMeadResult r = nelder_mead(objective, start, opts);
        report.evaluations += r.evaluations;
        if (r.fx < best_f) {
            best_f = r.fx;
            best_x = r.x;
        }
    }

    if (best_f < report.value) {
        report.best = decode(best_x);
        report.value = disturbance_corrected(inst, b, report.best).value;
    }
    return report;
}

ViolationSearchResult dichotomic_violation_search(int trials, std::uint64_t seed) {
    if (trials < 1) throw DomainError("violation search needs at least one trial");
    const PauliObservable z = PauliObservable::z();
    const PauliObservable x = PauliObservable::x();
    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.outcomes = 2;
    cfg.plane_xz = true;
    cfg.rank_profile = RankProfile::dichotomic_mixed_rank;

    struct Trial {
        double gsum = -1.0;
        double noise_z = 0.0;
        double disturbance_x = 0.0;
        Povm povm;
        Correction correction;
    };
    std::vector<Trial> results(static_cast<std::size_t>(trials));

    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
        Trial& t = results[i];
        t.povm = i == 0 ? dichotomic_example_povm() : random_dichotomic_mixed_rank(cfg, i);
        const Instrument inst = Instrument::lueders(t.povm);
        t.noise_z = noise(t.povm, z).value;
        const DisturbanceResult d = disturbance_optimized(inst, x, OptimizeStrategy::refine);
        t.disturbance_x = d.value;
        t.correction = d.correction_used;
        const double gn = binary_entropy_inverse(t.noise_z);
        const double gd = binary_entropy_inverse(t.disturbance_x);
        t.gsum = gn * gn + gd * gd;
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].gsum > results[best].gsum) best = i;

    ViolationSearchResult out;
    out.instrument = Instrument::lueders(results[best].povm);
    out.correction = results[best].correction;
    out.noise_z = results[best].noise_z;
    out.disturbance_x = results[best].disturbance_x;
    out.gsum = results[best].gsum;
    return out;
}

}  // namespace qnd
