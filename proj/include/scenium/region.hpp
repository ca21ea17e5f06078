#pragma once

#include <memory>
#include <optional>

#include "scenium/bvh.hpp"
#include "scenium/mesh.hpp"
#include "scenium/rng.hpp"

namespace scenium {

// Points within this distance of a surface count as contained / on it.
constexpr double kSurfaceTol = 1e-8;

struct SurfacePoint {
    Vec3 point;
    Vec3 normal;  // outward unit normal
};

// A region of 3D space: either nothing, everything, an axis-aligned box, a
// watertight mesh volume, or a bare triangle surface (no volume).
class Region {
  public:
    enum class Kind { Empty, All, Box, Volume, Surface };

    Region() : kind_(Kind::Empty) {}

    static Region empty() { return Region(); }
    static Region all();
    static Region box(const Vec3& center, const Vec3& dims);
    static Region volume(TriangleMesh mesh);
    static Region surface(TriangleMesh mesh);

    Kind kind() const { return kind_; }
    bool is_empty() const;

    // Membership; mesh volumes use ray-crossing parity and points within
    // kSurfaceTol of a surface count as contained.
    bool contains(const Vec3& p) const;

    // Uniform area-weighted point on the region's surface.
    SurfacePoint sample_surface(Rng& rng) const;

    // Uniform point in the region's volume (rejection sampling from the
    // bounding box; gives up after 10000 consecutive rejections).
    Vec3 sample_volume(Rng& rng) const;

    // Sub-surface of faces whose outward normal is within `max_angle`
    // radians of vertical (+Z).
    Region top_surface(double max_angle = deg2rad(80.0)) const;

    // Projection of p onto the region surface along -Z (falling back to +Z
    // when nothing lies below); nullopt when both rays miss.
    std::optional<SurfacePoint> project(const Vec3& p) const;

    Aabb bounds() const;

    const TriangleMesh* mesh() const { return data_ ? &data_->mesh : nullptr; }
    const Bvh* bvh() const { return data_ ? &data_->bvh : nullptr; }
    Vec3 box_center() const { return box_center_; }
    Vec3 box_dims() const { return box_dims_; }

  private:
    struct MeshData {
        explicit MeshData(TriangleMesh m) : mesh(std::move(m)), bvh(mesh) {}
        TriangleMesh mesh;
        Bvh bvh;
    };

    TriangleMesh box_mesh() const;

    Kind kind_;
    Vec3 box_center_, box_dims_;
    std::shared_ptr<const MeshData> data_;
};

}  // namespace scenium
