#include "scenium/region.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "scenium/collision.hpp"
#include "scenium/errors.hpp"

namespace scenium {

Region Region::all() {
    Region r;
    r.kind_ = Kind::All;
    return r;
}

Region Region::box(const Vec3& center, const Vec3& dims) {
    Region r;
    r.kind_ = Kind::Box;
    r.box_center_ = center;
    r.box_dims_ = dims;
    r.data_ = std::make_shared<const MeshData>(r.box_mesh());
    return r;
}

Region Region::volume(TriangleMesh mesh) {
    Region r;
    r.kind_ = Kind::Volume;
    r.data_ = std::make_shared<const MeshData>(std::move(mesh));
    return r;
}

Region Region::surface(TriangleMesh mesh) {
    Region r;
    r.kind_ = Kind::Surface;
    r.data_ = std::make_shared<const MeshData>(std::move(mesh));
    return r;
}

bool Region::is_empty() const {
    if (kind_ == Kind::Empty) return true;
    if (kind_ == Kind::All) return false;
    return data_->mesh.triangles.empty();
}

TriangleMesh Region::box_mesh() const {
    TriangleMesh unit = make_box_mesh();
    Pose pose;
    pose.position = box_center_;
    return unit.transformed(pose, box_dims_);
}

bool Region::contains(const Vec3& p) const {
    switch (kind_) {
        case Kind::Empty:
            return false;
        case Kind::All:
            return true;
        case Kind::Box:
            return std::abs(p.x - box_center_.x) <= 0.5 * box_dims_.x + kSurfaceTol &&
                   std::abs(p.y - box_center_.y) <= 0.5 * box_dims_.y + kSurfaceTol &&
                   std::abs(p.z - box_center_.z) <= 0.5 * box_dims_.z + kSurfaceTol;
        case Kind::Volume:
            return solid_contains(data_->mesh, &data_->bvh, p);
        case Kind::Surface:
            return mesh_distance(data_->mesh, &data_->bvh, p) <= kSurfaceTol;
    }
    return false;
}

SurfacePoint Region::sample_surface(Rng& rng) const {
    if (kind_ == Kind::Empty || kind_ == Kind::All || data_->mesh.triangles.empty()) {
        throw EmptyRegionError("region has no surface to sample");
    }
    const TriangleMesh& m = data_->mesh;
    std::vector<double> cumulative(m.triangles.size());
    double total = 0.0;
    for (size_t i = 0; i < m.triangles.size(); ++i) {
        total += m.area(static_cast<int>(i));
        cumulative[i] = total;
    }
    if (total <= 0.0) throw EmptyRegionError("region surface has zero area");
    double pick = rng.uniform() * total;
    size_t idx = std::lower_bound(cumulative.begin(), cumulative.end(), pick) -
                 cumulative.begin();
    if (idx >= m.triangles.size()) idx = m.triangles.size() - 1;

    double u = rng.uniform(), v = rng.uniform();
    if (u + v > 1.0) {  // fold into the triangle for a uniform distribution
        u = 1.0 - u;
        v = 1.0 - v;
    }
    Vec3 v0 = m.triangle_vertex(static_cast<int>(idx), 0);
    Vec3 v1 = m.triangle_vertex(static_cast<int>(idx), 1);
    Vec3 v2 = m.triangle_vertex(static_cast<int>(idx), 2);
    SurfacePoint sp;
    sp.point = v0 + (v1 - v0) * u + (v2 - v0) * v;
    sp.normal = m.face_normal(static_cast<int>(idx)).normalized();
    return sp;
}

Vec3 Region::sample_volume(Rng& rng) const {
    switch (kind_) {
        case Kind::Empty:
            throw EmptyRegionError("cannot sample a point in an empty region");
        case Kind::All:
            throw EmptyRegionError("cannot sample a point in an unbounded region");
        case Kind::Surface:
            throw EmptyRegionError("a surface region has no volume to sample");
        case Kind::Box:
            return Vec3{box_center_.x + (rng.uniform() - 0.5) * box_dims_.x,
                        box_center_.y + (rng.uniform() - 0.5) * box_dims_.y,
                        box_center_.z + (rng.uniform() - 0.5) * box_dims_.z};
        case Kind::Volume:
            break;
    }
    const Aabb bb = data_->mesh.aabb();
    Vec3 ext = bb.extent();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Vec3 p{bb.lo.x + rng.uniform() * ext.x,
               bb.lo.y + rng.uniform() * ext.y,
               bb.lo.z + rng.uniform() * ext.z};
        if (solid_contains(data_->mesh, &data_->bvh, p)) return p;
    }
    throw EmptyRegionError("volume sampling failed: 10000 consecutive rejections");
}

Region Region::top_surface(double max_angle) const {
    if (kind_ == Kind::Empty || kind_ == Kind::All) return Region::empty();
    const TriangleMesh& m = data_->mesh;
    double min_nz = std::cos(max_angle);
    TriangleMesh sub;
    std::unordered_map<int, int> remap;
    for (size_t i = 0; i < m.triangles.size(); ++i) {
        Vec3 n = m.face_normal(static_cast<int>(i));
        double len = n.norm();
        if (len < 1e-18 || n.z / len < min_nz) continue;
        std::array<int, 3> tri;
        for (int k = 0; k < 3; ++k) {
            int old = m.triangles[i][k];
            auto it = remap.find(old);
            if (it == remap.end()) {
                it = remap.emplace(old, static_cast<int>(sub.vertices.size())).first;
                sub.vertices.push_back(m.vertices[old]);
            }
            tri[k] = it->second;
        }
        sub.triangles.push_back(tri);
    }
    if (sub.triangles.empty()) return Region::empty();
    return Region::surface(std::move(sub));
}

std::optional<SurfacePoint> Region::project(const Vec3& p) const {
    if (kind_ == Kind::Empty || kind_ == Kind::All) return std::nullopt;
    // tmin is slightly negative so a point already on the surface projects
    // to itself.
    for (Vec3 dir : {Vec3{0, 0, -1}, Vec3{0, 0, 1}}) {
        auto hit = data_->bvh.raycast(p, dir, -1e-9);
        if (hit) {
            SurfacePoint sp;
            sp.point = p + dir * hit->t;
            sp.normal = data_->mesh.face_normal(hit->triangle).normalized();
            return sp;
        }
    }
    return std::nullopt;
}

Aabb Region::bounds() const {
    Aabb bb;
    switch (kind_) {
        case Kind::Empty:
            return bb;
        case Kind::All:
            bb.lo = Vec3{-1e300, -1e300, -1e300};
            bb.hi = Vec3{1e300, 1e300, 1e300};
            return bb;
        default:
            return data_->mesh.aabb();
    }
}

}  // namespace scenium
