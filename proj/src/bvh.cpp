#include "scenium/bvh.hpp"

#include <algorithm>

namespace scenium {

std::optional<RayHit> intersect_ray_triangle(const Vec3& origin, const Vec3& dir,
                                             const Vec3& a, const Vec3& b, const Vec3& c) {
    constexpr double kDetEps = 1e-12;
    Vec3 e1 = b - a;
    Vec3 e2 = c - a;
    Vec3 p = dir.cross(e2);
    double det = e1.dot(p);
    if (std::abs(det) < kDetEps) return std::nullopt;
    double inv = 1.0 / det;
    Vec3 s = origin - a;
    double u = s.dot(p) * inv;
    if (u < -1e-13 || u > 1.0 + 1e-13) return std::nullopt;
    Vec3 q = s.cross(e1);
    double v = dir.dot(q) * inv;
    if (v < -1e-13 || u + v > 1.0 + 1e-13) return std::nullopt;
    double t = e2.dot(q) * inv;
    return RayHit{t, u, v, -1};
}

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return a;

    Vec3 bp = p - b;
    double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return b;

    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) {
        double v = d1 / (d1 - d3);
        return a + ab * v;
    }

    Vec3 cp = p - c;
    double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return c;

    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) {
        double w = d2 / (d2 - d6);
        return a + ac * w;
    }

    double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
        double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + (c - b) * w;
    }

    double denom = 1.0 / (va + vb + vc);
    double v = vb * denom, w = vc * denom;
    return a + ab * v + ac * w;
}

Bvh::Bvh(const TriangleMesh& mesh) : mesh_(&mesh) {
    int n = static_cast<int>(mesh.triangles.size());
    order_.resize(n);
    for (int i = 0; i < n; ++i) order_[i] = i;
    nodes_.reserve(std::max(1, 2 * n));
    if (n == 0) {
        nodes_.push_back(Node{});
        return;
    }
    build(order_, 0, n);
}

int Bvh::build(std::vector<int>& tris, int begin, int end) {
    int idx = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});

    Aabb box;
    Aabb centroid_box;
    for (int i = begin; i < end; ++i) {
        Vec3 a = mesh_->triangle_vertex(tris[i], 0);
        Vec3 b = mesh_->triangle_vertex(tris[i], 1);
        Vec3 c = mesh_->triangle_vertex(tris[i], 2);
        box.expand(a); box.expand(b); box.expand(c);
        centroid_box.expand((a + b + c) / 3.0);
    }
    nodes_[idx].box = box;

    int count = end - begin;
    if (count <= 4) {
        nodes_[idx].first = begin;
        nodes_[idx].count = count;
        return idx;
    }

    Vec3 e = centroid_box.extent();
    int axis = 0;
    if (e.y > e.x) axis = 1;
    if (e.z > (axis == 0 ? e.x : e.y)) axis = 2;

    int mid = begin + count / 2;
    std::nth_element(tris.begin() + begin, tris.begin() + mid, tris.begin() + end,
                     [&](int ta, int tb) {
                         auto centroid_axis = [&](int t) {
                             Vec3 c = (mesh_->triangle_vertex(t, 0) +
                                       mesh_->triangle_vertex(t, 1) +
                                       mesh_->triangle_vertex(t, 2)) / 3.0;
                             return axis == 0 ? c.x : axis == 1 ? c.y : c.z;
                         };
                         return centroid_axis(ta) < centroid_axis(tb);
                     });

    int left = build(tris, begin, mid);
    int right = build(tris, mid, end);
    nodes_[idx].left = left;
    nodes_[idx].right = right;
    return idx;
}

namespace {

bool ray_box(const Aabb& b, const Vec3& o, const Vec3& inv_dir, double tmax) {
    double t0 = 0.0, t1 = tmax;
    auto axis = [&](double lo, double hi, double ov, double inv) {
        double ta = (lo - ov) * inv;
        double tb = (hi - ov) * inv;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
    };
    axis(b.lo.x, b.hi.x, o.x, inv_dir.x);
    axis(b.lo.y, b.hi.y, o.y, inv_dir.y);
    axis(b.lo.z, b.hi.z, o.z, inv_dir.z);
    return t0 <= t1;
}

Vec3 safe_inverse(const Vec3& d) {
    auto inv = [](double v) { return v != 0.0 ? 1.0 / v : 1e300; };
    return {inv(d.x), inv(d.y), inv(d.z)};
}

}  // namespace

std::optional<RayHit> Bvh::raycast(const Vec3& origin, const Vec3& dir,
                                   double tmin, double tmax) const {
    if (mesh_->triangles.empty()) return std::nullopt;
    Vec3 inv = safe_inverse(dir);
    std::optional<RayHit> best;
    double limit = tmax;
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (!ray_box(node.box, origin, inv, limit)) continue;
        if (node.left < 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                int tri = order_[i];
                auto hit = intersect_ray_triangle(origin, dir,
                                                  mesh_->triangle_vertex(tri, 0),
                                                  mesh_->triangle_vertex(tri, 1),
                                                  mesh_->triangle_vertex(tri, 2));
                if (hit && hit->t > tmin && hit->t < limit) {
                    hit->triangle = tri;
                    best = hit;
                    limit = hit->t;
                }
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return best;
}

void Bvh::raycast_all(const Vec3& origin, const Vec3& dir, double tmin,
                      std::vector<RayHit>& out) const {
    if (mesh_->triangles.empty()) return;
    Vec3 inv = safe_inverse(dir);
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (!ray_box(node.box, origin, inv, 1e300)) continue;
        if (node.left < 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                int tri = order_[i];
                auto hit = intersect_ray_triangle(origin, dir,
                                                  mesh_->triangle_vertex(tri, 0),
                                                  mesh_->triangle_vertex(tri, 1),
                                                  mesh_->triangle_vertex(tri, 2));
                if (hit && hit->t > tmin) {
                    hit->triangle = tri;
                    out.push_back(*hit);
                }
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
}

double Bvh::distance(const Vec3& p) const {
    if (mesh_->triangles.empty()) return 1e300;
    double best2 = 1e300;
    // Branch and bound: a node is visited only if its box can beat best2,
    // so the result equals the exact minimum over all triangles.
    struct Entry { int node; double d2; };
    Entry stack[64];
    int top = 0;
    stack[top++] = {0, nodes_[0].box.dist2(p)};
    while (top > 0) {
        Entry e = stack[--top];
        if (e.d2 >= best2) continue;
        const Node& node = nodes_[e.node];
        if (node.left < 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                int tri = order_[i];
                Vec3 q = closest_point_on_triangle(p,
                                                   mesh_->triangle_vertex(tri, 0),
                                                   mesh_->triangle_vertex(tri, 1),
                                                   mesh_->triangle_vertex(tri, 2));
                best2 = std::min(best2, (p - q).norm2());
            }
        } else {
            Entry l{node.left, nodes_[node.left].box.dist2(p)};
            Entry r{node.right, nodes_[node.right].box.dist2(p)};
            if (l.d2 > r.d2) std::swap(l, r);  // nearer child on top
            stack[top++] = r;
            stack[top++] = l;
        }
    }
    return std::sqrt(best2);
}

bool Bvh::for_overlapping_pairs(const Bvh& a, const Bvh& b,
                                const std::function<bool(int, int)>& fn) {
    if (a.mesh_->triangles.empty() || b.mesh_->triangles.empty()) return false;
    std::vector<std::pair<int, int>> stack;
    stack.push_back({0, 0});
    while (!stack.empty()) {
        auto [ia, ib] = stack.back();
        stack.pop_back();
        const Node& na = a.nodes_[ia];
        const Node& nb = b.nodes_[ib];
        if (na.box.gap(nb.box) > 0.0) continue;
        bool leaf_a = na.left < 0, leaf_b = nb.left < 0;
        if (leaf_a && leaf_b) {
            for (int i = na.first; i < na.first + na.count; ++i) {
                for (int j = nb.first; j < nb.first + nb.count; ++j) {
                    if (fn(a.order_[i], b.order_[j])) return true;
                }
            }
        } else if (leaf_a || (!leaf_b && nb.box.extent().norm2() > na.box.extent().norm2())) {
            stack.push_back({ia, nb.left});
            stack.push_back({ia, nb.right});
        } else {
            stack.push_back({na.left, ib});
            stack.push_back({na.right, ib});
        }
    }
    return false;
}

}  // namespace scenium
