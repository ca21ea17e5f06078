#pragma once

#include <memory>

#include "scenium/bvh.hpp"
#include "scenium/mesh.hpp"

namespace scenium {

// Surface contact counts as an intersection only when the penetration
// exceeds this depth, so objects placed exactly on top of each other
// (resting contact) do not collide.
constexpr double kPenetrationTol = 1e-8;

// True when the two triangles penetrate each other by more than tol.
// Coplanar face-on-face contact counts only when the normals agree (the two
// solids lie on the same side of the shared plane, i.e. they overlap);
// opposing normals are resting contact.
bool tri_tri_penetrating(const Vec3& a0, const Vec3& a1, const Vec3& a2,
                         const Vec3& b0, const Vec3& b1, const Vec3& b2,
                         double tol = kPenetrationTol);

// Ray-crossing parity along a fixed jittered direction (with fallback
// directions when a hit is suspiciously close to a triangle edge).
// `bvh` may be null, in which case all triangles are tested directly.
bool parity_inside(const TriangleMesh& mesh, const Bvh* bvh, const Vec3& p);

// Exact distance from p to the mesh surface (brute force when bvh is null).
double mesh_distance(const TriangleMesh& mesh, const Bvh* bvh, const Vec3& p);

// Solid membership: parity-inside or within kSurfaceTol of the surface.
bool solid_contains(const TriangleMesh& mesh, const Bvh* bvh, const Vec3& p);

// A posed, scaled world-space instance of a shape, with its acceleration
// structure.  `bounding_radius`/`bounds` are conservative (from the scaled
// oriented box, not the triangles).
struct CollisionMesh {
    TriangleMesh mesh;
    std::unique_ptr<Bvh> bvh;
    Vec3 center;
    double bounding_radius = 0.0;
    Aabb bounds;

    CollisionMesh(const TriangleMesh& unit_mesh, const Pose& pose, const Vec3& dims);
};

// True when the closed solids overlap by more than kPenetrationTol: some
// triangle pair penetrates, or one mesh has a vertex strictly inside the
// other (full containment).  With `heuristics` off the same tests run
// without the bounding-sphere/AABB rejections and without any BVH, as a
// reference path; both paths must return identical results.
bool meshes_intersect(const CollisionMesh& a, const CollisionMesh& b,
                      bool heuristics = true);

}  // namespace scenium
