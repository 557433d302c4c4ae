#pragma once

#include <cmath>
#include <numbers>

namespace qnd {

// Real 3-vector used for Bloch-sphere coordinates of states, measurement
// axes and rotation axes.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    constexpr double norm2() const { return dot(*this); }

    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? *this / n : Vec3{};
    }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

using BlochVector = Vec3;

inline constexpr Vec3 kXAxis{1.0, 0.0, 0.0};
inline constexpr Vec3 kYAxis{0.0, 1.0, 0.0};
inline constexpr Vec3 kZAxis{0.0, 0.0, 1.0};

// Some unit vector orthogonal to v (|v| > 0).
inline Vec3 any_orthogonal(const Vec3& v) {
    const Vec3 trial = std::abs(v.x) < 0.9 ? kXAxis : kYAxis;
    return v.cross(trial).normalized();
}

// Rotation of Bloch vectors: axis-angle, acting as an element of SO(3).
// Global phase never enters Bloch-level quantities, so this is the whole
// content of a qubit unitary here.
class Rotation {
  public:
    Rotation() = default;
    Rotation(const Vec3& axis, double angle) : axis_(axis.normalized()), angle_(wrap(angle)) {
        if (axis_.norm2() == 0.0) axis_ = kZAxis;  // angle 0 conventionally
    }

    static Rotation identity() { return Rotation{}; }
    static Rotation about_y(double angle) { return Rotation{kYAxis, angle}; }

    // Rotation taking the unit vector `from` onto the unit vector `to`.
    static Rotation taking(const Vec3& from, const Vec3& to) {
        const Vec3 f = from.normalized();
        const Vec3 t = to.normalized();
        const Vec3 c = f.cross(t);
        const double s = c.norm();
        const double d = f.dot(t);
        if (s < 1e-15) {
            if (d >= 0.0) return identity();
            return Rotation{any_orthogonal(f), std::numbers::pi};
        }
        return Rotation{c / s, std::atan2(s, d)};
    }

    const Vec3& axis() const { return axis_; }
    double angle() const { return angle_; }
    bool is_identity(double eps = 1e-15) const {
        return angle_ < eps || angle_ > 2.0 * std::numbers::pi - eps;
    }

    // Rodrigues formula.
    Vec3 apply(const Vec3& v) const {
        const double c = std::cos(angle_);
        const double s = std::sin(angle_);
        return v * c + axis_.cross(v) * s + axis_ * (axis_.dot(v) * (1.0 - c));
    }

  private:
    static double wrap(double a) {
        const double tau = 2.0 * std::numbers::pi;
        a = std::fmod(a, tau);
        return a < 0.0 ? a + tau : a;
    }

    Vec3 axis_{0.0, 0.0, 1.0};
    double angle_ = 0.0;
};

}  // namespace qnd
