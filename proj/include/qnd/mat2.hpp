#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <complex>

#include "qnd/bloch.hpp"
#include "qnd/errors.hpp"

namespace qnd {

using complexd = std::complex<double>;

// Explicit 2x2 complex matrix. The Bloch representation is canonical for all
// closed-form work; this type backs general Kraus channels and serves as the
// independent arithmetic route when cross-checking Bloch-level formulas.
struct Mat2 {
    // Row-major entries.
    complexd a00{0.0, 0.0}, a01{0.0, 0.0}, a10{0.0, 0.0}, a11{0.0, 0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }

    Mat2 operator+(const Mat2& o) const {
        return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
    }
    Mat2 operator-(const Mat2& o) const {
        return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
    }
    Mat2 operator*(const Mat2& o) const {
        return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
                a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
    }
    Mat2 operator*(complexd s) const { return {a00 * s, a01 * s, a10 * s, a11 * s}; }
    Mat2 operator*(double s) const { return {a00 * s, a01 * s, a10 * s, a11 * s}; }

    Mat2 adjoint() const {
        return {std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)};
    }
    complexd trace() const { return a00 + a11; }

    double max_abs_diff(const Mat2& o) const {
        return std::max(std::max(std::abs(a00 - o.a00), std::abs(a01 - o.a01)),
                        std::max(std::abs(a10 - o.a10), std::abs(a11 - o.a11)));
    }
};

inline Mat2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 pauli_y() { return {0.0, complexd{0.0, -1.0}, complexd{0.0, 1.0}, 0.0}; }
inline Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

// c*1 + v.sigma as a matrix.
inline Mat2 mat_from_bloch(double c, const Vec3& v) {
    return {complexd{c + v.z, 0.0}, complexd{v.x, -v.y}, complexd{v.x, v.y}, complexd{c - v.z, 0.0}};
}

// Inverse of mat_from_bloch for (numerically) Hermitian input.
inline void bloch_from_mat(const Mat2& m, double& c, Vec3& v) {
    c = 0.5 * std::real(m.a00 + m.a11);
    v.x = 0.5 * std::real(m.a01 + m.a10);
    v.y = 0.5 * std::imag(m.a10 - m.a01);
    v.z = 0.5 * std::real(m.a00 - m.a11);
}

inline double hermiticity_defect(const Mat2& m) { return m.max_abs_diff(m.adjoint()); }

// Eigendecomposition of a Hermitian 2x2 matrix: returns eigenvalues
// (ascending) and the spectral projectors.
struct HermitianEigen {
    std::array<double, 2> values;
    std::array<Mat2, 2> projectors;
};

inline HermitianEigen eigen_hermitian(const Mat2& m) {
    const double a = std::real(m.a00);
    const double d = std::real(m.a11);
    const complexd b = m.a01;
    const double half_tr = 0.5 * (a + d);
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    HermitianEigen e;
    e.values = {half_tr - disc, half_tr + disc};
    if (disc < 1e-15) {
        e.projectors = {Mat2::identity() * 0.5, Mat2::identity() * 0.5};
        return e;
    }
    // P_hi = (M - lo*1)/(hi - lo); P_lo = 1 - P_hi.
    const Mat2 p_hi = (m - Mat2::identity() * e.values[0]) * (1.0 / (2.0 * disc));
    e.projectors = {Mat2::identity() - p_hi, p_hi};
    return e;
}

// Unique PSD square root, computed spectrally. Negative eigenvalues beyond
// tolerance are rejected; eigenvalues at relative roundoff scale are treated
// as exact zeros (their square roots would otherwise contribute a spurious
// sqrt(eps)-sized term).
inline Mat2 mat_sqrt_psd(const Mat2& m, double eps = 1e-12) {
    const HermitianEigen e = eigen_hermitian(m);
    if (e.values[0] < -eps) throw NotPsdError("matrix square root of a non-PSD operator");
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(e.values[1], 0.0);
    const double lo = e.values[0] <= floor ? 0.0 : std::sqrt(e.values[0]);
    const double hi = std::sqrt(std::max(e.values[1], 0.0));
    return e.projectors[0] * lo + e.projectors[1] * hi;
}

// SU(2) element implementing the given Bloch rotation,
// U = cos(t/2) 1 - i sin(t/2) (axis.sigma).
inline Mat2 su2_from_rotation(const Rotation& r) {
    const double c = std::cos(0.5 * r.angle());
    const double s = std::sin(0.5 * r.angle());
    const Vec3& n = r.axis();
    const complexd mi{0.0, -1.0};
    return Mat2::identity() * c +
           (pauli_x() * n.x + pauli_y() * n.y + pauli_z() * n.z) * (mi * s);
}

inline bool is_unitary(const Mat2& u, double eps = 1e-10) {
    return (u * u.adjoint()).max_abs_diff(Mat2::identity()) <= eps;
}

}  // namespace qnd
