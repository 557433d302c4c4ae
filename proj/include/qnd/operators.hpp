#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "qnd/bloch.hpp"
#include "qnd/errors.hpp"
#include "qnd/mat2.hpp"

namespace qnd {

// Tolerances used across the model layer: PSD slack on c - |v|, and the
// residual allowed when checking completeness / normalization sums.
inline constexpr double kPsdTol = 1e-12;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kProbTol = 1e-12;

// A 2x2 Hermitian operator in Bloch form c*1 + v.sigma. Real (c, v) make
// Hermiticity structural; positivity is the predicate c >= |v|.
struct HermitianOp {
    double c = 0.0;
    Vec3 v{};

    static HermitianOp identity() { return {1.0, {}}; }
    static HermitianOp zero() { return {}; }

    double trace() const { return 2.0 * c; }
    bool is_psd(double eps = kPsdTol) const { return c >= v.norm() - eps; }
    // Rank one <=> one eigenvalue vanishes <=> c == |v| (nonzero).
    bool is_rank_one(double eps = kPsdTol) const {
        return c > eps && std::abs(c - v.norm()) <= eps;
    }

    HermitianOp operator+(const HermitianOp& o) const { return {c + o.c, v + o.v}; }
    HermitianOp operator-(const HermitianOp& o) const { return {c - o.c, v - o.v}; }
    HermitianOp operator*(double s) const { return {c * s, v * s}; }

    Mat2 to_mat() const { return mat_from_bloch(c, v); }
    static HermitianOp from_mat(const Mat2& m) {
        HermitianOp op;
        bloch_from_mat(m, op.c, op.v);
        return op;
    }
};

// tr[M rho] for M = c + v.sigma and rho = 1/2 (1 + r.sigma).
inline double born_probability(const HermitianOp& m, const Vec3& state_bloch) {
    return m.c + m.v.dot(state_bloch);
}

// X rho X for Hermitian X = x0 + x.sigma and rho = r0 + r.sigma; closed form
// of the symmetric conjugation in Bloch coordinates.
inline HermitianOp conjugate(const HermitianOp& x, const HermitianOp& rho) {
    const double x0 = x.c;
    const Vec3& xv = x.v;
    const double r0 = rho.c;
    const Vec3& rv = rho.v;
    const double xn2 = xv.norm2();
    HermitianOp out;
    out.c = r0 * (x0 * x0 + xn2) + 2.0 * x0 * xv.dot(rv);
    out.v = rv * (x0 * x0 - xn2) + xv * (2.0 * (rv.dot(xv) + x0 * r0));
    return out;
}

// Sharpness k = |v|/c of an element, clamped into [0, 1]. A sharpness
// defect at roundoff scale is indistinguishable from an exactly rank-one
// element, and sqrt(1 - k) would inject a spurious sqrt(eps)-sized
// component downstream; snap to the sharp case.
inline double element_sharpness(double c, double vnorm) {
    const double k = std::min(vnorm / c, 1.0);
    return 1.0 - k < 64.0 * std::numeric_limits<double>::epsilon() ? 1.0 : k;
}

// Unique PSD square root of m = p(1 + k n.sigma):
//   sqrt(m) = sqrt(p) (alpha + beta n.sigma),
//   alpha = (sqrt(1+k)+sqrt(1-k))/2,  beta = (sqrt(1+k)-sqrt(1-k))/2.
inline HermitianOp psd_sqrt(const HermitianOp& m) {
    const double vn = m.v.norm();
    if (m.c < vn - kPsdTol) throw NotPsdError("psd_sqrt: operator is not positive semidefinite");
    if (m.c <= kPsdTol) return HermitianOp::zero();
    const double k = element_sharpness(m.c, vn);
    const double sp = std::sqrt(m.c);
    const double alpha = 0.5 * (std::sqrt(1.0 + k) + std::sqrt(1.0 - k));
    const double beta = 0.5 * (std::sqrt(1.0 + k) - std::sqrt(1.0 - k));
    const Vec3 n = vn > 0.0 ? m.v / vn : Vec3{};
    return {sp * alpha, n * (sp * beta)};
}

// A qubit density operator 1/2 (1 + r.sigma), stored by its Bloch vector.
class State {
  public:
    State() = default;  // maximally mixed
    explicit State(const Vec3& bloch) : r_(bloch) {
        if (r_.norm() > 1.0 + 1e-12)
            throw DomainError("state Bloch vector has norm " + std::to_string(r_.norm()) +
                              " > 1");
    }

    static State pure(const Vec3& direction) { return State(direction.normalized()); }
    static State maximally_mixed() { return State(); }

    const Vec3& bloch() const { return r_; }
    double purity_radius() const { return r_.norm(); }
    bool is_pure(double eps = 1e-10) const { return std::abs(r_.norm() - 1.0) <= eps; }

    HermitianOp to_op() const { return {0.5, r_ * 0.5}; }
    Mat2 to_mat() const { return mat_from_bloch(0.5, r_ * 0.5); }

  private:
    Vec3 r_{};
};

// A sharp qubit observable a.sigma with eigenvalues +/-1, identified by its
// unit Bloch axis.
class PauliObservable {
  public:
    explicit PauliObservable(const Vec3& axis) : axis_(axis.normalized()) {
        if (axis.norm() < 1e-15) throw DomainError("observable axis must be nonzero");
    }

    static PauliObservable x() { return PauliObservable(kDeferNorm, kXAxis); }
    static PauliObservable y() { return PauliObservable(kDeferNorm, kYAxis); }
    static PauliObservable z() { return PauliObservable(kDeferNorm, kZAxis); }

    const Vec3& axis() const { return axis_; }

    // Projector onto the +1 or -1 eigenstate.
    HermitianOp eigenprojector(int sign) const {
        return {0.5, axis_ * (sign >= 0 ? 0.5 : -0.5)};
    }
    State eigenstate(int sign) const { return State(sign >= 0 ? axis_ : -axis_); }

  private:
    struct DeferNormTag {};
    static constexpr DeferNormTag kDeferNorm{};
    PauliObservable(DeferNormTag, const Vec3& unit_axis) : axis_(unit_axis) {}

    Vec3 axis_;
};

}  // namespace qnd
