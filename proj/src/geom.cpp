#include "scenium/geom.hpp"

#include "scenium/errors.hpp"

namespace scenium {

void Orientation::normalize() {
    double n = std::sqrt(w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_);
    if (n == 0.0) {
        w_ = 1.0; x_ = y_ = z_ = 0.0;
        return;
    }
    w_ /= n; x_ /= n; y_ /= n; z_ /= n;
}

Orientation Orientation::from_euler(double yaw, double pitch, double roll) {
    double cy = std::cos(yaw * 0.5), sy = std::sin(yaw * 0.5);
    double cp = std::cos(pitch * 0.5), sp = std::sin(pitch * 0.5);
    double cr = std::cos(roll * 0.5), sr = std::sin(roll * 0.5);
    // qz(yaw) * qx(pitch) * qy(roll)
    Orientation qz(cy, 0, 0, sy);
    Orientation qx(cp, sp, 0, 0);
    Orientation qy(cr, 0, sr, 0);
    return qz.compose(qx).compose(qy);
}

Orientation Orientation::from_axis_angle(const Vec3& axis, double angle) {
    Vec3 a = axis.normalized();
    double h = angle * 0.5;
    double s = std::sin(h);
    return Orientation(std::cos(h), a.x * s, a.y * s, a.z * s);
}

Orientation Orientation::rotation_between(const Vec3& from, const Vec3& to) {
    Vec3 f = from.normalized();
    Vec3 t = to.normalized();
    double c = f.dot(t);
    if (c > 1.0 - 1e-14) return identity();
    if (c < -1.0 + 1e-14) {
        // Opposite vectors: rotate pi about any axis perpendicular to f.
        Vec3 axis = f.cross(Vec3{1, 0, 0});
        if (axis.norm2() < 1e-12) axis = f.cross(Vec3{0, 1, 0});
        return from_axis_angle(axis, kPi);
    }
    Vec3 axis = f.cross(t);
    return from_axis_angle(axis, std::acos(std::max(-1.0, std::min(1.0, c))));
}

Vec3 Orientation::apply(const Vec3& v) const {
    // v' = v + 2w(q x v) + 2(q x (q x v)) with q = (x, y, z)
    Vec3 q{x_, y_, z_};
    Vec3 t = q.cross(v) * 2.0;
    return v + t * w_ + q.cross(t);
}

Orientation Orientation::compose(const Orientation& o) const {
    return Orientation(
        w_ * o.w_ - x_ * o.x_ - y_ * o.y_ - z_ * o.z_,
        w_ * o.x_ + x_ * o.w_ + y_ * o.z_ - z_ * o.y_,
        w_ * o.y_ - x_ * o.z_ + y_ * o.w_ + z_ * o.x_,
        w_ * o.z_ + x_ * o.y_ - y_ * o.x_ + z_ * o.w_);
}

Mat3 Orientation::matrix() const {
    double xx = x_ * x_, yy = y_ * y_, zz = z_ * z_;
    double xy = x_ * y_, xz = x_ * z_, yz = y_ * z_;
    double wx = w_ * x_, wy = w_ * y_, wz = w_ * z_;
    return Mat3{{
        {{1 - 2 * (yy + zz), 2 * (xy - wz), 2 * (xz + wy)}},
        {{2 * (xy + wz), 1 - 2 * (xx + zz), 2 * (yz - wx)}},
        {{2 * (xz - wy), 2 * (yz + wx), 1 - 2 * (xx + yy)}},
    }};
}

void Orientation::euler_angles(double& yaw, double& pitch, double& roll) const {
    // R = Rz(yaw) Rx(pitch) Ry(roll); R[2][1] = sin(pitch),
    // R[0][1] = -sin(yaw)cos(pitch), R[1][1] = cos(yaw)cos(pitch),
    // R[2][0] = -cos(pitch)sin(roll), R[2][2] = cos(pitch)cos(roll).
    Mat3 m = matrix();
    double sp = std::max(-1.0, std::min(1.0, m[2][1]));
    pitch = std::asin(sp);
    if (std::abs(sp) > 1.0 - 1e-12) {
        // Gimbal lock: only yaw±roll is determined; report it as yaw.
        yaw = std::atan2(m[1][0], m[0][0]);
        roll = 0.0;
    } else {
        yaw = std::atan2(-m[0][1], m[1][1]);
        roll = std::atan2(-m[2][0], m[2][2]);
    }
    yaw = wrap_angle(yaw);
    roll = wrap_angle(roll);
}

double Orientation::yaw() const {
    double y, p, r;
    euler_angles(y, p, r);
    return y;
}

double Orientation::pitch() const {
    double y, p, r;
    euler_angles(y, p, r);
    return p;
}

double Orientation::roll() const {
    double y, p, r;
    euler_angles(y, p, r);
    return r;
}

bool Orientation::approx_equal(const Orientation& o, double tol) const {
    double d = std::abs(w_ * o.w_ + x_ * o.x_ + y_ * o.y_ + z_ * o.z_);
    return 1.0 - d <= tol;
}

AnglePair angles_toward(const Vec3& from, const Vec3& to) {
    Vec3 d = to - from;
    double h = std::hypot(d.x, d.y);
    if (h < 1e-12) {
        throw DegenerateDirection(
            "direction is vertical: yaw toward the target is undefined");
    }
    return AnglePair{std::atan2(-d.x, d.y), std::atan2(d.z, h)};
}

}  // namespace scenium
