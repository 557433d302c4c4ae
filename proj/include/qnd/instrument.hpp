#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qnd/mat2.hpp"
#include "qnd/operators.hpp"
#include "qnd/povm.hpp"

namespace qnd {

// State-update rules. Lueders applies the square-root dynamics
// rho -> sqrt(M) rho sqrt(M); PurityPreserving additionally rotates the
// output by a per-outcome unitary; MeasurePrepare emits a fixed state per
// outcome; KrausUpdate is the general single-outcome channel sum_i K rho K^+.
struct LuedersUpdate {};
struct PurityPreservingUpdate {
    std::vector<Rotation> unitaries;  // one per outcome
};
struct MeasurePrepareUpdate {
    std::vector<State> states;  // one per outcome
};
struct KrausUpdate {
    std::vector<std::vector<Mat2>> ops;  // ops[m] = Kraus operators of outcome m
};

using UpdateRule =
    std::variant<LuedersUpdate, PurityPreservingUpdate, MeasurePrepareUpdate, KrausUpdate>;

struct Instrument {
    Povm povm;
    UpdateRule update = LuedersUpdate{};

    std::size_t outcomes() const { return povm.size(); }

    static Instrument lueders(Povm p) { return {std::move(p), LuedersUpdate{}}; }
    static Instrument purity_preserving(Povm p, std::vector<Rotation> unitaries) {
        return {std::move(p), PurityPreservingUpdate{std::move(unitaries)}};
    }
    static Instrument measure_prepare(Povm p, std::vector<State> states) {
        return {std::move(p), MeasurePrepareUpdate{std::move(states)}};
    }
    static Instrument kraus(Povm p, std::vector<std::vector<Mat2>> ops) {
        return {std::move(p), KrausUpdate{std::move(ops)}};
    }
};

inline void require_valid(const Instrument& inst) {
    require_valid(inst.povm);
    const std::size_t n = inst.outcomes();
    if (const auto* pp = std::get_if<PurityPreservingUpdate>(&inst.update)) {
        if (pp->unitaries.size() != n)
            throw ShapeError("purity-preserving update needs one unitary per outcome");
    } else if (const auto* mp = std::get_if<MeasurePrepareUpdate>(&inst.update)) {
        if (mp->states.size() != n)
            throw ShapeError("measure-and-prepare update needs one state per outcome");
    } else if (const auto* kr = std::get_if<KrausUpdate>(&inst.update)) {
        if (kr->ops.size() != n)
            throw ShapeError("Kraus update needs one operator list per outcome");
        for (std::size_t m = 0; m < n; ++m) {
            Mat2 sum = Mat2::zero();
            for (const Mat2& k : kr->ops[m]) sum = sum + k.adjoint() * k;
            if (sum.max_abs_diff(inst.povm[m].to_mat()) > kNormTol)
                throw ShapeError("Kraus operators of outcome " + std::to_string(m) +
                                 " do not reproduce the POVM element");
        }
    }
}

// Outcome-conditioned post-processing applied before the final reference
// measurement: do nothing, rotate the Bloch vector, or discard and prepare a
// fixed state.
struct CorrIdentity {};
struct CorrRotate {
    Rotation rotation;
};
struct CorrPrepare {
    State state;
};
using CorrectionOp = std::variant<CorrIdentity, CorrRotate, CorrPrepare>;

struct Correction {
    std::vector<CorrectionOp> per_outcome;

    std::size_t size() const { return per_outcome.size(); }

    static Correction identity(std::size_t outcomes) {
        return {std::vector<CorrectionOp>(outcomes, CorrIdentity{})};
    }
    static Correction rotations(std::vector<Rotation> rs) {
        Correction c;
        c.per_outcome.reserve(rs.size());
        for (auto& r : rs) c.per_outcome.push_back(CorrRotate{r});
        return c;
    }
};

inline Vec3 apply_correction_op(const CorrectionOp& op, const Vec3& bloch) {
    if (std::holds_alternative<CorrIdentity>(op)) return bloch;
    if (const auto* rot = std::get_if<CorrRotate>(&op)) return rot->rotation.apply(bloch);
    return std::get<CorrPrepare>(op).state.bloch();
}

// Result of measuring one outcome: Born probability and the normalized
// post-measurement state. Outcomes of (near-)zero probability leave the
// post state undefined rather than failing; entropic sums weight them by 0.
struct OutcomeResult {
    double probability = 0.0;
    State post;
    bool post_defined = false;
};

inline OutcomeResult apply_instrument(const Instrument& inst, const State& rho,
                                      std::size_t outcome) {
    if (outcome >= inst.outcomes())
        throw OutcomeRangeError("outcome " + std::to_string(outcome) + " out of range (" +
                                std::to_string(inst.outcomes()) + " outcomes)");
    const HermitianOp& m = inst.povm[outcome];
    OutcomeResult res;
    res.probability = std::max(born_probability(m, rho.bloch()), 0.0);
    if (res.probability < kProbTol) return res;

    if (std::holds_alternative<LuedersUpdate>(inst.update) ||
        std::holds_alternative<PurityPreservingUpdate>(inst.update)) {
        const HermitianOp post = conjugate(psd_sqrt(m), rho.to_op());
        Vec3 r = post.v / post.c;  // normalize trace to 1
        if (const auto* pp = std::get_if<PurityPreservingUpdate>(&inst.update))
            r = pp->unitaries[outcome].apply(r);
        const double n = r.norm();
        if (n > 1.0) r = r / n;  // clamp roundoff outside the ball
        res.post = State(r);
        res.post_defined = true;
    } else if (const auto* mp = std::get_if<MeasurePrepareUpdate>(&inst.update)) {
        res.post = mp->states[outcome];
        res.post_defined = true;
    } else {
        const auto& ops = std::get<KrausUpdate>(inst.update).ops[outcome];
        Mat2 acc = Mat2::zero();
        const Mat2 rho_m = rho.to_mat();
        for (const Mat2& k : ops) acc = acc + k * rho_m * k.adjoint();
        const double tr = std::real(acc.trace());
        if (tr < kProbTol) return res;
        res.probability = tr;
        HermitianOp post = HermitianOp::from_mat(acc * (1.0 / tr));
        Vec3 r = post.v * 2.0;
        const double n = r.norm();
        if (n > 1.0) r = r / n;
        res.post = State(r);
        res.post_defined = true;
    }
    return res;
}

// Same contract as apply_instrument, but every step runs through explicit
// 2x2 complex arithmetic (spectral square roots, SU(2) conjugation). Used to
// cross-check the Bloch closed forms.
inline OutcomeResult apply_instrument_mat2(const Instrument& inst, const State& rho,
                                           std::size_t outcome) {
    if (outcome >= inst.outcomes())
        throw OutcomeRangeError("outcome " + std::to_string(outcome) + " out of range");
    const Mat2 m = inst.povm[outcome].to_mat();
    const Mat2 rho_m = rho.to_mat();
    OutcomeResult res;
    res.probability = std::max(std::real((m * rho_m).trace()), 0.0);
    if (res.probability < kProbTol) return res;

    Mat2 out;
    if (std::holds_alternative<LuedersUpdate>(inst.update)) {
        const Mat2 s = mat_sqrt_psd(m);
        out = s * rho_m * s;
    } else if (const auto* pp = std::get_if<PurityPreservingUpdate>(&inst.update)) {
        const Mat2 s = mat_sqrt_psd(m);
        const Mat2 u = su2_from_rotation(pp->unitaries[outcome]);
        out = u * s * rho_m * s * u.adjoint();
    } else if (const auto* mp = std::get_if<MeasurePrepareUpdate>(&inst.update)) {
        out = mp->states[outcome].to_mat() * res.probability;
    } else {
        const auto& ops = std::get<KrausUpdate>(inst.update).ops[outcome];
        out = Mat2::zero();
        for (const Mat2& k : ops) out = out + k * rho_m * k.adjoint();
    }
    const double tr = std::real(out.trace());
    if (tr < kProbTol) return res;
    res.probability = tr;
    HermitianOp post = HermitianOp::from_mat(out * (1.0 / tr));
    Vec3 r = post.v * 2.0;
    const double n = r.norm();
    if (n > 1.0) r = r / n;
    res.post = State(r);
    res.post_defined = true;
    return res;
}

}  // namespace qnd
