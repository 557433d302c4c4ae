#include "qnd/measures.hpp"

#include <algorithm>
#include <cmath>

#include "qnd/optimize.hpp"

namespace qnd {

NoiseResult noise(const Povm& povm, const PauliObservable& a) {
    require_valid(povm);
    NoiseResult res;
    res.per_outcome.reserve(povm.size());
    for (const HermitianOp& m : povm.elements) {
        const double p = m.c;
        if (p <= kProbTol) {
            res.per_outcome.emplace_back(p, 0.0);
            continue;
        }
        const double h = binary_entropy(std::min(std::abs(m.v.dot(a.axis())) / p, 1.0));
        res.per_outcome.emplace_back(p, h);
        res.value += p * h;
    }
    return res;
}

JointDist noise_joint_table(const Povm& povm, const PauliObservable& a) {
    JointDist j(2, povm.size());
    for (std::size_t m = 0; m < povm.size(); ++m) {
        const HermitianOp& e = povm[m];
        const double overlap = e.v.dot(a.axis());
        j.at(0, m) = std::max(0.5 * (e.c + overlap), 0.0);
        j.at(1, m) = std::max(0.5 * (e.c - overlap), 0.0);
    }
    return j;
}

NoiseResult noise_via_joint(const Povm& povm, const PauliObservable& a) {
    require_valid(povm);
    const JointDist j = noise_joint_table(povm, a);
    NoiseResult res;
    res.value = conditional_entropy(j);
    const std::vector<double> pm = j.col_marginal();
    res.per_outcome.reserve(povm.size());
    for (std::size_t m = 0; m < povm.size(); ++m) {
        double h = 0.0;
        if (pm[m] > kProbTol)
            h = -plog2p(j.at(0, m) / pm[m]) - plog2p(j.at(1, m) / pm[m]);
        res.per_outcome.emplace_back(pm[m], h);
    }
    return res;
}

DisturbanceResult disturbance_corrected(const Instrument& inst, const PauliObservable& b,
                                        const Correction& corr) {
    require_valid(inst);
    if (corr.size() != inst.outcomes())
        throw ShapeError("correction has " + std::to_string(corr.size()) + " entries for " +
                         std::to_string(inst.outcomes()) + " outcomes");
    DisturbanceResult res;
    res.correction_used = corr;
    for (int row = 0; row < 2; ++row) {
        const State input = b.eigenstate(row == 0 ? +1 : -1);
        for (std::size_t m = 0; m < inst.outcomes(); ++m) {
            const OutcomeResult out = apply_instrument(inst, input, m);
            if (out.probability <= 0.0 || !out.post_defined) continue;
            const Vec3 r = apply_correction_op(corr.per_outcome[m], out.post.bloch());
            const double overlap = r.dot(b.axis());
            res.joint.at(row, 0) += 0.5 * out.probability * 0.5 * (1.0 + overlap);
            res.joint.at(row, 1) += 0.5 * out.probability * 0.5 * (1.0 - overlap);
        }
    }
    res.value = conditional_entropy(res.joint);
    return res;
}

Vec3 luders_average_post(const Povm& povm, const PauliObservable& b) {
    Vec3 sum{};
    for (const HermitianOp& m : povm.elements) {
        const ElementParam e = element_param(m);
        if (e.p <= kProbTol) continue;
        const double along = e.n.dot(b.axis());
        const Vec3 parallel = e.n * along;
        sum += e.p * (parallel + std::sqrt(std::max(1.0 - e.k * e.k, 0.0)) *
                                     (b.axis() - parallel));
    }
    return sum;
}

namespace {

// Joint (prepared b, measured b') table when the average post vectors for
// inputs +/-b are +/-symmetric + offset.
JointDist symmetric_joint(const Vec3& symmetric, const Vec3& offset, const PauliObservable& b) {
    const double s = symmetric.dot(b.axis());
    const double d = offset.dot(b.axis());
    JointDist j(2, 2);
    j.at(0, 0) = std::max(0.25 * (1.0 + (s + d)), 0.0);
    j.at(0, 1) = std::max(0.25 * (1.0 - (s + d)), 0.0);
    j.at(1, 0) = std::max(0.25 * (1.0 + (-s + d)), 0.0);
    j.at(1, 1) = std::max(0.25 * (1.0 - (-s + d)), 0.0);
    return j;
}

}  // namespace

DisturbanceResult disturbance_identity_lueders(const Povm& povm, const PauliObservable& b) {
    require_valid(povm);
    DisturbanceResult res;
    res.correction_used = Correction::identity(povm.size());
    res.joint = symmetric_joint(luders_average_post(povm, b), Vec3{}, b);
    res.value = conditional_entropy(res.joint);
    return res;
}

PurityPreservingPost pp_average_post(const Povm& povm, const std::vector<Rotation>& unitaries,
                                     const PauliObservable& b) {
    if (unitaries.size() != povm.size())
        throw ShapeError("need one unitary per POVM outcome");
    PurityPreservingPost post;
    for (std::size_t m = 0; m < povm.size(); ++m) {
        const ElementParam e = element_param(povm[m]);
        if (e.p <= kProbTol) continue;
        const double along = e.n.dot(b.axis());
        const Vec3 n_rot = unitaries[m].apply(e.n);
        const Vec3 b_rot = unitaries[m].apply(b.axis());
        post.symmetric += e.p * (n_rot * along + std::sqrt(std::max(1.0 - e.k * e.k, 0.0)) *
                                                     (b_rot - n_rot * along));
        post.offset += (e.p * e.k) * n_rot;
    }
    return post;
}

double pp_disturbance_formula(const PurityPreservingPost& post, const PauliObservable& b) {
    const double s = std::abs(post.symmetric.dot(b.axis()));
    const double d = post.offset.dot(b.axis());
    double value = 0.0;
    for (const double sign : {+1.0, -1.0}) {
        const double weight = 0.5 * (1.0 + sign * d);
        if (weight <= kProbTol) continue;
        value += weight * binary_entropy(std::min(s / (2.0 * weight), 1.0));
    }
    return value;
}

DisturbanceResult disturbance_identity_pp(const Povm& povm,
                                          const std::vector<Rotation>& unitaries,
                                          const PauliObservable& b) {
    require_valid(povm);
    const PurityPreservingPost post = pp_average_post(povm, unitaries, b);
    DisturbanceResult res;
    res.correction_used = Correction::identity(povm.size());
    res.joint = symmetric_joint(post.symmetric, post.offset, b);
    res.value = conditional_entropy(res.joint);
    return res;
}

DisturbanceResult disturbance_optimized(const Instrument& inst, const PauliObservable& b,
                                        OptimizeStrategy strategy) {
    require_valid(inst);
    const std::size_t n = inst.outcomes();
    DisturbanceResult best = disturbance_corrected(inst, b, Correction::identity(n));

    auto consider = [&](const Correction& corr) {
        DisturbanceResult r = disturbance_corrected(inst, b, corr);
        if (r.value < best.value) best = std::move(r);
    };

    const Correction aligned = heuristic_alignment(inst.povm, b);
    consider(aligned);
    if (strategy == OptimizeStrategy::refine) {
        constexpr int kRefineBudget = 900;
        consider(refine_corrections(inst, b, aligned, kRefineBudget).best);
    }

    if (n == 2) {
        // Per-outcome prepare maps; extreme points of the conditional-entropy
        // objective sit at the B eigenstates or the maximally mixed state.
        const std::vector<CorrectionOp> prepare_choices = {
            CorrPrepare{b.eigenstate(+1)}, CorrPrepare{b.eigenstate(-1)},
            CorrPrepare{State::maximally_mixed()}};
        for (int keep = 0; keep < 2; ++keep) {  // outcome left under rotation control
            for (const CorrectionOp& prep : prepare_choices) {
                Correction corr = aligned;
                corr.per_outcome[keep == 0 ? 1 : 0] = prep;
                consider(corr);
                if (strategy == OptimizeStrategy::refine)
                    consider(refine_corrections(inst, b, corr, 300).best);
            }
        }
        for (const CorrectionOp& p0 : prepare_choices)
            for (const CorrectionOp& p1 : prepare_choices)
                consider(Correction{{p0, p1}});
    }
    return best;
}

}  // namespace qnd
