#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "scenium/mesh.hpp"

namespace scenium {

struct RayHit {
    double t = 0.0;
    double u = 0.0, v = 0.0;  // barycentric coordinates of the hit
    int triangle = -1;
};

// Moller-Trumbore ray/triangle intersection; rays whose direction is within
// the 1e-12 determinant epsilon of the triangle plane report no hit.
std::optional<RayHit> intersect_ray_triangle(const Vec3& origin, const Vec3& dir,
                                             const Vec3& a, const Vec3& b, const Vec3& c);

// Closest point on a triangle to p (Ericson's method).
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Bounding volume hierarchy over a triangle mesh.  Median split on the
// longest axis of the triangle-centroid bounds, at most 4 triangles per leaf.
class Bvh {
  public:
    explicit Bvh(const TriangleMesh& mesh);

    const TriangleMesh& mesh() const { return *mesh_; }
    const Aabb& bounds() const { return nodes_[0].box; }

    // Nearest hit along the ray with t in (tmin, tmax).
    std::optional<RayHit> raycast(const Vec3& origin, const Vec3& dir,
                                  double tmin = 1e-12, double tmax = 1e300) const;

    // All hits with t > tmin, in arbitrary order.
    void raycast_all(const Vec3& origin, const Vec3& dir, double tmin,
                     std::vector<RayHit>& out) const;

    // Exact distance from p to the mesh surface.
    double distance(const Vec3& p) const;

    // Invokes fn on every triangle-index pair whose leaf boxes overlap.
    // Stops early when fn returns true; returns whether it did.
    static bool for_overlapping_pairs(const Bvh& a, const Bvh& b,
                                      const std::function<bool(int, int)>& fn);

  private:
    struct Node {
        Aabb box;
        int left = -1, right = -1;  // internal node when left >= 0
        int first = 0, count = 0;   // leaf triangle range in order_
    };

    int build(std::vector<int>& tris, int begin, int end);

    const TriangleMesh* mesh_;
    std::vector<Node> nodes_;
    std::vector<int> order_;
};

}  // namespace scenium
