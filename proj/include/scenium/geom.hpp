#pragma once

#include <array>
#include <cmath>

namespace scenium {

// Conventions used throughout: right-handed coordinates, +Z up, and a body
// with zero orientation faces +Y.  Angles are radians.  Yaw/pitch/roll are
// intrinsic Z-X-Y rotations: positive yaw turns the forward vector from +Y
// toward -X, positive pitch raises it toward +Z, positive roll tilts the top
// of the body toward its +X side.

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * (kPi / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / kPi); }

// Normalize an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? *this / n : Vec3{0, 0, 0};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

using Mat3 = std::array<std::array<double, 3>, 3>;

// Unit-quaternion rotation.  Identity faces +Y.
class Orientation {
  public:
    Orientation() = default;  // identity
    Orientation(double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {
        normalize();
    }

    static Orientation identity() { return {}; }

    // Intrinsic Z-X-Y: rotate(yaw about Z) * rotate(pitch about X) * rotate(roll about Y).
    static Orientation from_euler(double yaw, double pitch, double roll);

    // Minimal rotation taking unit vector `from` onto unit vector `to`.
    static Orientation rotation_between(const Vec3& from, const Vec3& to);

    static Orientation from_axis_angle(const Vec3& axis, double angle);

    // Applies this rotation to a vector.
    Vec3 apply(const Vec3& v) const;

    // this ∘ other: apply `other` first, then this.
    Orientation compose(const Orientation& other) const;

    Orientation inverse() const { return Orientation(w_, -x_, -y_, -z_); }

    Mat3 matrix() const;

    // Euler readback.  yaw/roll in (-pi, pi], pitch in [-pi/2, pi/2].
    // At the pitch singularity (|pitch| = pi/2) yaw absorbs the roll and
    // roll reads back as 0.
    double yaw() const;
    double pitch() const;
    double roll() const;
    void euler_angles(double& yaw, double& pitch, double& roll) const;

    Vec3 forward() const { return apply({0, 1, 0}); }
    Vec3 up() const { return apply({0, 0, 1}); }

    double w() const { return w_; }
    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    // True when the two rotations agree within `tol` as rotations
    // (q and -q are the same rotation).
    bool approx_equal(const Orientation& o, double tol = 1e-9) const;

  private:
    void normalize();

    double w_ = 1.0, x_ = 0.0, y_ = 0.0, z_ = 0.0;
};

struct Pose {
    Vec3 position;
    Orientation orientation;

    Vec3 to_world(const Vec3& local) const { return position + orientation.apply(local); }
    Vec3 to_local(const Vec3& world) const {
        return orientation.inverse().apply(world - position);
    }
};

struct AnglePair {
    double yaw = 0.0;
    double pitch = 0.0;
};

// Yaw/pitch of the direction from `from` to `to` under the facing
// conventions above: yaw = atan2(-dx, dy), pitch = atan2(dz, hypot(dx, dy)).
// Throws DegenerateDirection when the horizontal projection of the
// direction vanishes (target straight up or down), where yaw is undefined.
AnglePair angles_toward(const Vec3& from, const Vec3& to);

}  // namespace scenium
