#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qnd/operators.hpp"

namespace qnd {

// Canonical parameterization of a POVM element, M = p(1 + k n.sigma):
// p is the outcome weight on the maximally mixed state, k in [0,1] the
// sharpness, n the unit measurement axis.
struct ElementParam {
    double p = 0.0;
    double k = 0.0;
    Vec3 n = kZAxis;
};

inline ElementParam element_param(const HermitianOp& m) {
    ElementParam e;
    e.p = m.c;
    const double vn = m.v.norm();
    if (m.c > kPsdTol && vn > 0.0) {
        e.k = element_sharpness(m.c, vn);
        e.n = m.v / vn;
    }
    return e;
}

inline HermitianOp element_from_param(const ElementParam& e) {
    return {e.p, e.n.normalized() * (e.p * e.k)};
}

// Finite positive-operator valued measure: PSD elements summing to 1.
struct Povm {
    std::vector<HermitianOp> elements;

    std::size_t size() const { return elements.size(); }
    const HermitianOp& operator[](std::size_t m) const { return elements[m]; }

    static Povm projective(const Vec3& axis) {
        const Vec3 a = axis.normalized();
        return Povm{{HermitianOp{0.5, a * 0.5}, HermitianOp{0.5, a * -0.5}}};
    }
    static Povm trivial() { return Povm{{HermitianOp::identity()}}; }

    static Povm from_params(const std::vector<ElementParam>& params) {
        Povm p;
        p.elements.reserve(params.size());
        for (const auto& e : params) p.elements.push_back(element_from_param(e));
        return p;
    }
    std::vector<ElementParam> params() const {
        std::vector<ElementParam> out;
        out.reserve(elements.size());
        for (const auto& m : elements) out.push_back(element_param(m));
        return out;
    }
};

struct PovmReport {
    bool valid = true;
    // max(|sum c - 1|, |sum v|)
    double normalization_residual = 0.0;
    std::vector<std::string> problems;
};

inline PovmReport validate(const Povm& povm) {
    PovmReport report;
    if (povm.elements.empty()) {
        report.valid = false;
        report.problems.push_back("POVM has no elements");
        return report;
    }
    double csum = 0.0;
    Vec3 vsum{};
    for (std::size_t m = 0; m < povm.size(); ++m) {
        const HermitianOp& e = povm[m];
        if (!e.is_psd()) {
            report.valid = false;
            report.problems.push_back("element " + std::to_string(m) +
                                      " is not PSD (c - |v| = " +
                                      std::to_string(e.c - e.v.norm()) + ")");
        }
        csum += e.c;
        vsum += e.v;
    }
    report.normalization_residual = std::max(std::abs(csum - 1.0), vsum.norm());
    if (report.normalization_residual > kNormTol) {
        report.valid = false;
        report.problems.push_back("elements do not sum to identity (residual " +
                                  std::to_string(report.normalization_residual) + ")");
    }
    return report;
}

inline void require_valid(const Povm& povm) {
    const PovmReport r = validate(povm);
    if (!r.valid) {
        std::string msg = "invalid POVM:";
        for (const auto& p : r.problems) msg += " " + p + ";";
        throw InvalidPovmError(msg);
    }
}

// Merge outcomes by summing the elements of each group. `grouping` must cover
// every outcome index exactly once.
inline Povm coarse_grain(const Povm& povm, const std::vector<std::vector<std::size_t>>& grouping) {
    std::vector<int> seen(povm.size(), 0);
    Povm out;
    out.elements.reserve(grouping.size());
    for (const auto& group : grouping) {
        if (group.empty()) throw PartitionError("coarse_grain: empty group");
        HermitianOp sum = HermitianOp::zero();
        for (std::size_t idx : group) {
            if (idx >= povm.size())
                throw PartitionError("coarse_grain: index " + std::to_string(idx) +
                                     " out of range");
            if (seen[idx]++)
                throw PartitionError("coarse_grain: index " + std::to_string(idx) +
                                     " appears twice");
            sum = sum + povm[idx];
        }
        out.elements.push_back(sum);
    }
    for (std::size_t m = 0; m < seen.size(); ++m)
        if (!seen[m])
            throw PartitionError("coarse_grain: index " + std::to_string(m) + " not covered");
    return out;
}

}  // namespace qnd
