#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "scenium/geom.hpp"

namespace scenium {

struct Aabb {
    Vec3 lo{1e300, 1e300, 1e300};
    Vec3 hi{-1e300, -1e300, -1e300};

    void expand(const Vec3& p) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    void expand(const Aabb& b) { expand(b.lo); expand(b.hi); }
    Vec3 center() const { return (lo + hi) * 0.5; }
    Vec3 extent() const { return hi - lo; }
    bool valid() const { return lo.x <= hi.x; }
    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y &&
               p.z >= lo.z && p.z <= hi.z;
    }
    // Largest per-axis gap between the boxes; negative means they overlap.
    double gap(const Aabb& o) const {
        double g = -1e300;
        g = std::max(g, std::max(o.lo.x - hi.x, lo.x - o.hi.x));
        g = std::max(g, std::max(o.lo.y - hi.y, lo.y - o.hi.y));
        g = std::max(g, std::max(o.lo.z - hi.z, lo.z - o.hi.z));
        return g;
    }
    // Squared distance from a point to the box (0 inside).
    double dist2(const Vec3& p) const {
        auto ax = [](double v, double lo_, double hi_) {
            double d = std::max({lo_ - v, 0.0, v - hi_});
            return d * d;
        };
        return ax(p.x, lo.x, hi.x) + ax(p.y, lo.y, hi.y) + ax(p.z, lo.z, hi.z);
    }
};

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

    Aabb aabb() const;
    Vec3 triangle_vertex(int tri, int corner) const {
        return vertices[triangles[tri][corner]];
    }
    // Unnormalized outward normal (winding order is counterclockwise seen
    // from outside).
    Vec3 face_normal(int tri) const;
    double area(int tri) const;
    double total_area() const;
    // Signed volume via the divergence theorem; positive for outward winding.
    double signed_volume() const;
    Vec3 centroid() const;

    // Every undirected edge shared by exactly two triangles and every
    // directed edge used exactly once (consistent orientation).
    bool is_watertight() const;

    // Translate/scale so the bounding box becomes the unit cube centered at
    // the origin.  Axes with (near-)zero extent are centered but not scaled.
    void normalize_to_unit_cube();

    // Scale by (sx, sy, sz) in local space, then transform by pose.
    TriangleMesh transformed(const Pose& pose, const Vec3& scale) const;

    void append(const TriangleMesh& other);
};

// ------------------------------------------------------------ primitives ----
// All primitives fill the unit cube [-0.5, 0.5]^3 and are watertight with
// outward winding.  Tessellation is fixed so results are reproducible:
// sphere = icosphere with 3 subdivisions, cylinder and cone use 32 segments.

TriangleMesh make_box_mesh();
TriangleMesh make_sphere_mesh();
TriangleMesh make_cylinder_mesh();
TriangleMesh make_cone_mesh();

enum class ShapeKind { Box, Sphere, Cylinder, Cone, Mesh };

// A shape is a normalized unit mesh; object dimensions rescale it.
class Shape {
  public:
    Shape() : Shape(ShapeKind::Box) {}
    explicit Shape(ShapeKind kind);
    Shape(ShapeKind kind, TriangleMesh mesh, std::string source);

    static Shape box() { return Shape(ShapeKind::Box); }
    static Shape from_name(const std::string& name);  // "box", "sphere", ..., "mesh:path"

    ShapeKind kind() const { return kind_; }
    const TriangleMesh& unit_mesh() const { return *mesh_; }
    // "box" | "sphere" | "cylinder" | "cone" | "mesh:<path>"
    std::string name() const;

  private:
    ShapeKind kind_;
    std::shared_ptr<const TriangleMesh> mesh_;
    std::string source_;  // mesh file path when kind == Mesh
};

// Loads a Wavefront OBJ (v/f records, 1-based indices, polygons fanned into
// triangles) or a binary STL (by extension), then normalizes to the unit
// cube.  Throws MeshFormatError / IoError.
TriangleMesh load_mesh(const std::string& path);

// Parsers for in-memory data, used by load_mesh and by tests.
TriangleMesh parse_obj(const std::string& text, const std::string& origin);
TriangleMesh parse_stl_binary(const std::string& bytes, const std::string& origin);

}  // namespace scenium
