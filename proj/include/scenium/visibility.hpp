#pragma once

#include <vector>

#include "scenium/collision.hpp"
#include "scenium/geom.hpp"

namespace scenium {

struct Scene;

// Viewer parameters for visibility queries.  Apertures are full angles
// (yaw: around the vertical, pitch: elevation), centered on the viewer's
// facing direction.
struct ViewSpec {
    double view_angle_yaw = 2.0 * kPi;
    double view_angle_pitch = kPi;
    double visible_distance = 50.0;
    double ray_density = 1.0;  // rays per degree along each lattice axis
};

// An occluder hit counts when it is at most this much farther than the
// target hit along the same ray, so exact ties resolve to "occluded".
constexpr double kOcclusionTol = 1e-9;

// World-space unit directions of the ray lattice a viewer at `viewer` casts
// to probe for a target centered at `target_center` with bounding radius
// `target_radius`.  The lattice is anchored at the target's angular center
// with one-over-density degree spacing, clipped to the view cone; it degrades
// to covering the whole view cone when the viewer is inside the target's
// bounding sphere.  Doubling `ray_density` keeps every existing direction.
std::vector<Vec3> view_ray_directions(const Pose& viewer, const ViewSpec& spec,
                                      const Vec3& target_center, double target_radius);

// True when any lattice ray (or ray toward a target mesh vertex) hits the
// target within `visible_distance` before hitting any occluder.
bool can_see(const Pose& viewer, const ViewSpec& spec, const CollisionMesh& target,
             const std::vector<const CollisionMesh*>& occluders);

// Scene-level wrapper: viewer and target by index; every other object
// occludes.  The viewer's own mesh never blocks its view.
bool can_see_object(const Scene& scene, int viewer, int target);

}  // namespace scenium
