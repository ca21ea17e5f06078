#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "scenium/collision.hpp"
#include "scenium/rng.hpp"

using namespace scenium;

namespace {

CollisionMesh box_at(const Vec3& pos, const Vec3& dims,
                     const Orientation& q = Orientation::identity()) {
    static const TriangleMesh unit = make_box_mesh();
    return CollisionMesh(unit, Pose{pos, q}, dims);
}

TriangleMesh shape_mesh(int which) {
    switch (which & 3) {
        case 0: return make_box_mesh();
        case 1: return make_sphere_mesh();
        case 2: return make_cylinder_mesh();
        default: return make_cone_mesh();
    }
}

}  // namespace

TEST_SUITE("collision") {

TEST_CASE("overlap, tangency and separation of unit boxes") {
    CollisionMesh a = box_at({0, 0, 0}, {1, 1, 1});
    CHECK(meshes_intersect(a, box_at({0.5, 0, 0}, {1, 1, 1})));
    CHECK(meshes_intersect(a, box_at({0.5, 0, 0}, {1, 1, 1}), false));
    // face-on-face tangency is resting contact, not a collision
    CHECK(!meshes_intersect(a, box_at({1.0, 0, 0}, {1, 1, 1})));
    CHECK(!meshes_intersect(a, box_at({1.0, 0, 0}, {1, 1, 1}), false));
    CHECK(!meshes_intersect(a, box_at({2.0, 0, 0}, {1, 1, 1})));
    // clear the tolerance on both sides
    CHECK(meshes_intersect(a, box_at({1.0 - 1e-6, 0, 0}, {1, 1, 1})));
    CHECK(!meshes_intersect(a, box_at({1.0 + 1e-6, 0, 0}, {1, 1, 1})));
}

TEST_CASE("a stacked tower rests without colliding") {
    CollisionMesh base = box_at({0, 0, 0.5}, {2, 2, 1});
    CollisionMesh mid = box_at({0.3, -0.2, 1.25}, {1, 1, 0.5});
    CollisionMesh top = box_at({0.3, -0.2, 1.6}, {0.5, 0.5, 0.2});
    CHECK(!meshes_intersect(base, mid));
    CHECK(!meshes_intersect(mid, top));
    CHECK(!meshes_intersect(base, top));
    // sinking the middle block by a hair is a collision
    CollisionMesh sunk = box_at({0.3, -0.2, 1.25 - 1e-6}, {1, 1, 0.5});
    CHECK(meshes_intersect(base, sunk));
}

TEST_CASE("edge-to-edge touching boxes do not collide") {
    CollisionMesh a = box_at({0, 0, 0}, {1, 1, 1});
    CollisionMesh corner = box_at({1, 1, 0}, {1, 1, 1});  // shares one vertical edge
    CHECK(!meshes_intersect(a, corner));
    CHECK(!meshes_intersect(a, corner, false));
}

TEST_CASE("full containment counts as intersection") {
    CollisionMesh outer = box_at({0, 0, 0}, {4, 4, 4});
    CollisionMesh inner = box_at({0.5, 0.5, 0.5}, {0.5, 0.5, 0.5});
    CHECK(meshes_intersect(outer, inner));
    CHECK(meshes_intersect(inner, outer));
    CHECK(meshes_intersect(outer, inner, false));
}

TEST_CASE("overlapping aabbs with disjoint meshes do not collide") {
    // A thin plank rotated 45 degrees about z sits in the corner gap of an
    // L-shaped arrangement: its aabb overlaps the block's but the solids are
    // separate.
    CollisionMesh block = box_at({0, 0, 0}, {1, 1, 1});
    CollisionMesh plank =
        box_at({0.9, 0.9, 0}, {1.6, 0.1, 0.5}, Orientation::from_euler(-kPi / 4, 0, 0));
    CHECK(plank.bounds.gap(block.bounds) < 0.0);  // aabbs do overlap
    CHECK(!meshes_intersect(block, plank));
    CHECK(!meshes_intersect(block, plank, false));
}

TEST_CASE("parity_inside with and without a bvh") {
    TriangleMesh mesh = make_box_mesh();
    Bvh bvh(mesh);
    Rng rng(41);
    for (int i = 0; i < 500; ++i) {
        Vec3 p{rng.range(-1, 1), rng.range(-1, 1), rng.range(-1, 1)};
        bool expect = std::abs(p.x) < 0.5 && std::abs(p.y) < 0.5 && std::abs(p.z) < 0.5;
        // skip points within noise of the surface where parity may tie-break
        if (std::abs(std::abs(p.x) - 0.5) < 1e-9 || std::abs(std::abs(p.y) - 0.5) < 1e-9 ||
            std::abs(std::abs(p.z) - 0.5) < 1e-9)
            continue;
        CAPTURE(p.x); CAPTURE(p.y); CAPTURE(p.z);
        CHECK(parity_inside(mesh, &bvh, p) == expect);
        CHECK(parity_inside(mesh, nullptr, p) == expect);
    }
}

TEST_CASE("mesh_distance to a unit box") {
    TriangleMesh mesh = make_box_mesh();
    Bvh bvh(mesh);
    CHECK(mesh_distance(mesh, &bvh, {0.75, 0, 0}) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(mesh_distance(mesh, &bvh, {0, 0, 0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mesh_distance(mesh, &bvh, {2, 2, 0}) ==
          doctest::Approx(std::sqrt(2.0) * 1.5).epsilon(1e-12));
    CHECK(mesh_distance(mesh, nullptr, {0.75, 0, 0}) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("solid_contains includes the surface shell") {
    TriangleMesh mesh = make_box_mesh();
    Bvh bvh(mesh);
    CHECK(solid_contains(mesh, &bvh, {0, 0, 0}));
    CHECK(solid_contains(mesh, &bvh, {0.5, 0, 0}));        // exactly on a face
    CHECK(solid_contains(mesh, &bvh, {0.5, 0.5, 0.5}));    // exactly on a corner
    CHECK(!solid_contains(mesh, &bvh, {0.5 + 1e-6, 0, 0}));
}

TEST_CASE("tri_tri_penetrating separates resting from overlapping coplanar contact") {
    // two triangles in the z = 0 plane, overlapping in x/y
    Vec3 a0{0, 0, 0}, a1{1, 0, 0}, a2{0, 1, 0};
    Vec3 b0{0.2, 0.2, 0}, b1{1.2, 0.2, 0}, b2{0.2, 1.2, 0};
    // as faces of solids on opposite sides (normals oppose): resting contact
    CHECK(!tri_tri_penetrating(a0, a1, a2, b0, b2, b1));
    // same side (normals agree): the solids overlap in depth
    CHECK(tri_tri_penetrating(a0, a1, a2, b0, b1, b2));
    // plainly crossing triangles
    Vec3 c0{0.2, 0.2, -0.5}, c1{0.3, 0.2, 0.5}, c2{0.2, 0.3, 0.5};
    CHECK(tri_tri_penetrating(a0, a1, a2, c0, c1, c2));
    // disjoint
    Vec3 d0{5, 5, 5}, d1{6, 5, 5}, d2{5, 6, 5};
    CHECK(!tri_tri_penetrating(a0, a1, a2, d0, d1, d2));
}

TEST_CASE("heuristic and reference paths agree on random pairs") {
    Rng rng(20240815);
    int intersecting = 0;
    for (int i = 0; i < 400; ++i) {
        TriangleMesh ma = shape_mesh(static_cast<int>(rng.below(4)));
        TriangleMesh mb = shape_mesh(static_cast<int>(rng.below(4)));
        Pose pa{{rng.range(-2, 2), rng.range(-2, 2), rng.range(-2, 2)},
                Orientation::from_euler(rng.range(-kPi, kPi), rng.range(-1.5, 1.5),
                                        rng.range(-kPi, kPi))};
        Pose pb{{rng.range(-2, 2), rng.range(-2, 2), rng.range(-2, 2)},
                Orientation::from_euler(rng.range(-kPi, kPi), rng.range(-1.5, 1.5),
                                        rng.range(-kPi, kPi))};
        Vec3 da{rng.range(0.2, 2.5), rng.range(0.2, 2.5), rng.range(0.2, 2.5)};
        Vec3 db{rng.range(0.2, 2.5), rng.range(0.2, 2.5), rng.range(0.2, 2.5)};
        CollisionMesh ca(ma, pa, da);
        CollisionMesh cb(mb, pb, db);
        bool fast = meshes_intersect(ca, cb);
        bool slow = meshes_intersect(ca, cb, false);
        CAPTURE(i);
        CHECK(fast == slow);
        // intersection is symmetric
        CHECK(meshes_intersect(cb, ca) == fast);
        intersecting += fast ? 1 : 0;
    }
    // the mix must exercise both outcomes to mean anything
    CHECK(intersecting > 50);
    CHECK(intersecting < 350);
}

TEST_CASE("collision mesh carries conservative bounds") {
    CollisionMesh c = box_at({3, 4, 0}, {2, 2, 2}, Orientation::from_euler(0.3, 0.2, 0.1));
    CHECK((c.center - Vec3{3, 4, 0}).norm() < 1e-12);
    CHECK(c.bounding_radius >= std::sqrt(3.0) - 1e-12);  // half diagonal of a 2-cube
    for (const Vec3& v : c.mesh.vertices) {
        CHECK(c.bounds.contains(v));
        CHECK((v - c.center).norm() <= c.bounding_radius + 1e-9);
    }
}

}  // TEST_SUITE
