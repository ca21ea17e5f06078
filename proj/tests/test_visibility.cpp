#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "scenium/visibility.hpp"

using namespace scenium;

namespace {

CollisionMesh box_at(const Vec3& pos, const Vec3& dims,
                     const Orientation& q = Orientation::identity()) {
    static const TriangleMesh unit = make_box_mesh();
    return CollisionMesh(unit, Pose{pos, q}, dims);
}

Pose looking_along_y() { return Pose{{0, 0, 0}, Orientation::identity()}; }

}  // namespace

TEST_SUITE("visibility") {

TEST_CASE("lattice size tracks the target's angular radius") {
    ViewSpec spec;  // full apertures, density 1
    double dist = 10.0;
    // bounding radius subtending a half-angle of 5 degrees
    double r5 = dist * std::sin(deg2rad(5.0));
    auto rays = view_ray_directions(looking_along_y(), spec, {0, dist, 0}, r5);
    // a square patch of (2k+1)^2 directions at one per degree, k = 5,
    // possibly trimmed at the cone boundary
    CHECK(rays.size() <= 121);
    CHECK(rays.size() >= 81);
    // a larger target gets more rays
    double r20 = dist * std::sin(deg2rad(20.0));
    auto more = view_ray_directions(looking_along_y(), spec, {0, dist, 0}, r20);
    CHECK(more.size() > rays.size());
    // all directions are unit length and roughly toward the target
    for (const Vec3& d : rays) {
        CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(d.y > 0.9);
    }
}

TEST_CASE("doubling the density keeps every existing direction") {
    ViewSpec one;
    ViewSpec two;
    two.ray_density = 2.0;
    double dist = 10.0;
    double r = dist * std::sin(deg2rad(6.0));
    auto coarse = view_ray_directions(looking_along_y(), one, {2, dist, 1}, r);
    auto fine = view_ray_directions(looking_along_y(), two, {2, dist, 1}, r);
    CHECK(fine.size() > coarse.size());
    for (const Vec3& c : coarse) {
        bool found = false;
        for (const Vec3& f : fine)
            if (c.dot(f) > 1.0 - 1e-12) { found = true; break; }
        CAPTURE(c.x); CAPTURE(c.y); CAPTURE(c.z);
        CHECK(found);
    }
}

TEST_CASE("viewer inside the bounding sphere sweeps the whole view cone") {
    ViewSpec spec;
    auto sweep = view_ray_directions(looking_along_y(), spec, {0, 0.5, 0}, 2.0);
    // the sweep covers all directions, not an anchored patch
    CHECK(sweep.size() > 10000);
    bool has_backward = false;
    for (const Vec3& d : sweep)
        if (d.y < -0.9) { has_backward = true; break; }
    CHECK(has_backward);
}

TEST_CASE("the lattice clips to a narrow view cone") {
    ViewSpec narrow;
    narrow.view_angle_yaw = deg2rad(90.0);
    narrow.view_angle_pitch = deg2rad(60.0);
    double dist = 10.0;
    double r = dist * std::sin(deg2rad(5.0));
    // a target well outside the aperture contributes no rays
    auto off = view_ray_directions(looking_along_y(), narrow, {0, -dist, 0}, r);
    CHECK(off.empty());
    // near the cone edge the patch is partially clipped
    Vec3 edge{dist * std::sin(deg2rad(44.0)), dist * std::cos(deg2rad(44.0)), 0};
    auto clipped = view_ray_directions(looking_along_y(), narrow, edge, r);
    auto center = view_ray_directions(looking_along_y(), narrow, {0, dist, 0}, r);
    CHECK(!clipped.empty());
    CHECK(clipped.size() < center.size());
}

TEST_CASE("plain sight, occlusion, range and aperture") {
    CollisionMesh target = box_at({0, 5, 0}, {1, 1, 1});
    CollisionMesh wall = box_at({0, 2.5, 0}, {8, 0.2, 8});
    ViewSpec spec;
    spec.visible_distance = 50;
    Pose viewer = looking_along_y();

    CHECK(can_see(viewer, spec, target, {}));
    CHECK(!can_see(viewer, spec, target, {&wall}));
    // an occluder beside the line of sight does not block
    CollisionMesh aside = box_at({4, 2.5, 0}, {0.5, 0.2, 8});
    CHECK(can_see(viewer, spec, target, {&aside}));
    // out of range
    ViewSpec near                      = spec;
    near.visible_distance = 3.0;
    CHECK(!can_see(viewer, near, target, {}));
    // behind the viewer with a forward-only aperture
    ViewSpec forward = spec;
    forward.view_angle_yaw = deg2rad(120.0);
    forward.view_angle_pitch = deg2rad(90.0);
    CollisionMesh behind = box_at({0, -5, 0}, {1, 1, 1});
    CHECK(!can_see(viewer, forward, behind, {}));
    CHECK(can_see(viewer, spec, behind, {}));  // full aperture sees backward
}

TEST_CASE("exact distance ties resolve to occluded") {
    // target front face and occluder front face both at y = 4.5
    CollisionMesh target = box_at({0, 5, 0}, {1, 1, 1});
    CollisionMesh flush = box_at({0, 5.0, 0}, {3, 1, 3});  // same near plane, bigger
    ViewSpec spec;
    CHECK(!can_see(looking_along_y(), spec, target, {&flush}));
    // pulling the occluder back past the tolerance restores sight
    CollisionMesh recessed = box_at({0, 5.0 + 1e-6, 0}, {3, 1, 3});
    CHECK(can_see(looking_along_y(), spec, target, {&recessed}));
}

TEST_CASE("target mesh vertices act as probes for thin targets") {
    // a pole thinner than the one-degree lattice spacing at this distance
    CollisionMesh pole = box_at({0, 30, 0}, {0.02, 0.02, 8});
    ViewSpec spec;
    CHECK(can_see(looking_along_y(), spec, pole, {}));

    // a blocker sized so every lattice ray is either stopped or overshoots
    // the pole tip: only the rays aimed at the mesh vertices still connect
    CollisionMesh blocker = box_at({0, 15, 0}, {2, 0.2, 3.8});
    CHECK(can_see(looking_along_y(), spec, pole, {&blocker}));
    // a taller blocker removes the vertex sightline too
    CollisionMesh full = box_at({0, 15, 0}, {2, 0.2, 9});
    CHECK(!can_see(looking_along_y(), spec, pole, {&full}));
}

TEST_CASE("scene-level queries ignore the viewer's own mesh") {
    Scene s = test_util::sample_source(
        "ego = new Object at (0, 0, 1), with width 2, with length 2, with height 2,\n"
        "    with allowCollisions true\n"
        "t = new Object at (0, 6, 1), with allowCollisions true\n"
        "w = new Object at (0, 3, 1), with width 6, with length 0.2, with height 6,\n"
        "    with allowCollisions true\n");
    int ego = s.find_object("ego");
    int t = s.find_object("t");
    int w = s.find_object("w");
    // the wall blocks the target but not itself
    CHECK(!can_see_object(s, ego, t));
    CHECK(can_see_object(s, ego, w));
    // from the target's side, same occlusion
    CHECK(!can_see_object(s, t, ego));
}

TEST_CASE("visibility respects the viewer's facing direction") {
    Scene s = test_util::sample_source(
        "ego = new Object at (0, 0, 1), facing (180 deg, 0, 0),\n"
        "    with viewAngles (90 deg, 60 deg), with allowCollisions true\n"
        "t = new Object at (0, 6, 1), with allowCollisions true\n");
    // ego faces -y; the target sits at +y, outside the 90-degree cone
    CHECK(!can_see_object(s, s.find_object("ego"), s.find_object("t")));
}

}  // TEST_SUITE
