#include "scenium/visibility.hpp"

#include <algorithm>
#include <cmath>

#include "scenium/scene.hpp"

namespace scenium {

namespace {

// Azimuth/elevation of a direction in the viewer's frame, matching the
// facing conventions (azimuth 0 = straight ahead along +Y, positive toward
// -X; elevation positive upward).
void local_angles(const Vec3& d_local, double& az, double& el) {
    double horiz = std::hypot(d_local.x, d_local.y);
    az = (horiz < 1e-300) ? 0.0 : std::atan2(-d_local.x, d_local.y);
    el = std::atan2(d_local.z, horiz);
}

Vec3 direction_from(double az, double el) {
    double c = std::cos(el);
    return {-std::sin(az) * c, std::cos(az) * c, std::sin(el)};
}

bool within_view(const ViewSpec& spec, double az, double el) {
    const double slack = 1e-12;
    if (spec.view_angle_yaw < 2.0 * kPi - 1e-12 &&
        std::abs(wrap_angle(az)) > spec.view_angle_yaw / 2.0 + slack)
        return false;
    return std::abs(el) <= std::min(spec.view_angle_pitch / 2.0, kPi / 2.0) + slack;
}

}  // namespace

std::vector<Vec3> view_ray_directions(const Pose& viewer, const ViewSpec& spec,
                                      const Vec3& target_center, double target_radius) {
    double h = deg2rad(1.0) / std::max(spec.ray_density, 1e-6);

    Vec3 d = target_center - viewer.position;
    double dist = d.norm();

    double az_c = 0.0, el_c = 0.0;
    double half_angle = kPi;  // full sweep unless a proper cone exists
    if (dist > target_radius && dist > 1e-12) {
        Vec3 d_local = viewer.orientation.inverse().apply(d);
        local_angles(d_local, az_c, el_c);
        half_angle = std::asin(std::min(1.0, target_radius / dist));
    }

    bool full_sweep = half_angle >= kPi / 2.0;
    if (full_sweep) {
        az_c = 0.0;
        el_c = 0.0;
    }

    double max_el = std::min(spec.view_angle_pitch / 2.0, kPi / 2.0);
    long k_az, k_el;
    if (full_sweep) {
        k_az = static_cast<long>(std::floor(spec.view_angle_yaw / 2.0 / h));
        k_el = static_cast<long>(std::floor(max_el / h));
    } else {
        k_az = k_el = static_cast<long>(std::ceil(half_angle / h));
    }

    std::vector<Vec3> dirs;
    dirs.reserve(static_cast<size_t>((2 * k_az + 1) * (2 * k_el + 1)));
    for (long i = -k_az; i <= k_az; ++i) {
        double az = az_c + static_cast<double>(i) * h;
        for (long j = -k_el; j <= k_el; ++j) {
            double el = el_c + static_cast<double>(j) * h;
            if (std::abs(el) > kPi / 2.0 + 1e-12) continue;
            if (!within_view(spec, az, el)) continue;
            dirs.push_back(viewer.orientation.apply(direction_from(az, el)));
        }
    }
    return dirs;
}

bool can_see(const Pose& viewer, const ViewSpec& spec, const CollisionMesh& target,
             const std::vector<const CollisionMesh*>& occluders) {
    std::vector<Vec3> dirs =
        view_ray_directions(viewer, spec, target.center, target.bounding_radius);

    // The target's own vertices are sharper probes than the lattice for thin
    // or off-center geometry.
    Orientation inv = viewer.orientation.inverse();
    for (const Vec3& v : target.mesh.vertices) {
        Vec3 d = v - viewer.position;
        if (d.norm2() < 1e-24) continue;
        double az, el;
        local_angles(inv.apply(d), az, el);
        if (within_view(spec, az, el)) dirs.push_back(d.normalized());
    }

    for (const Vec3& dir : dirs) {
        auto hit = target.bvh->raycast(viewer.position, dir, 1e-9);
        if (!hit || hit->t > spec.visible_distance) continue;
        bool occluded = false;
        for (const CollisionMesh* occ : occluders) {
            if (occ->bvh->raycast(viewer.position, dir, 1e-9, hit->t + kOcclusionTol)) {
                occluded = true;
                break;
            }
        }
        if (!occluded) return true;
    }
    return false;
}

bool can_see_object(const Scene& scene, int viewer, int target) {
    if (viewer == target) return true;
    const SceneObject& v = scene.object(viewer);
    const SceneObject& t = scene.object(target);

    ViewSpec spec;
    spec.view_angle_yaw = v.view_angle_yaw;
    spec.view_angle_pitch = v.view_angle_pitch;
    spec.visible_distance = v.visible_distance;
    spec.ray_density = v.ray_density;

    std::vector<const CollisionMesh*> occluders;
    for (size_t i = 0; i < scene.objects.size(); ++i) {
        if (static_cast<int>(i) == viewer || static_cast<int>(i) == target) continue;
        occluders.push_back(&scene.objects[i].collision());
    }
    Pose eye{v.position, v.orientation()};
    return can_see(eye, spec, t.collision(), occluders);
}

}  // namespace scenium
