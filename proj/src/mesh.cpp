#include "scenium/mesh.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "scenium/errors.hpp"

namespace scenium {

Aabb TriangleMesh::aabb() const {
    Aabb box;
    for (const auto& v : vertices) box.expand(v);
    return box;
}

Vec3 TriangleMesh::face_normal(int tri) const {
    Vec3 a = triangle_vertex(tri, 0);
    Vec3 b = triangle_vertex(tri, 1);
    Vec3 c = triangle_vertex(tri, 2);
    return (b - a).cross(c - a);
}

double TriangleMesh::area(int tri) const { return 0.5 * face_normal(tri).norm(); }

double TriangleMesh::total_area() const {
    double s = 0.0;
    for (size_t i = 0; i < triangles.size(); ++i) s += area(static_cast<int>(i));
    return s;
}

double TriangleMesh::signed_volume() const {
    double v = 0.0;
    for (const auto& t : triangles) {
        const Vec3& a = vertices[t[0]];
        const Vec3& b = vertices[t[1]];
        const Vec3& c = vertices[t[2]];
        v += a.dot(b.cross(c)) / 6.0;
    }
    return v;
}

Vec3 TriangleMesh::centroid() const {
    Vec3 c{0, 0, 0};
    if (vertices.empty()) return c;
    for (const auto& v : vertices) c += v;
    return c / static_cast<double>(vertices.size());
}

bool TriangleMesh::is_watertight() const {
    if (triangles.empty()) return false;
    // Count directed edges; a closed, consistently oriented surface uses
    // every directed edge exactly once and its reverse exactly once.
    std::map<std::pair<int, int>, int> directed;
    for (const auto& t : triangles) {
        for (int k = 0; k < 3; ++k) {
            int a = t[k], b = t[(k + 1) % 3];
            if (a == b) return false;
            if (++directed[{a, b}] > 1) return false;
        }
    }
    for (const auto& [edge, count] : directed) {
        auto rev = directed.find({edge.second, edge.first});
        if (rev == directed.end() || rev->second != count) return false;
    }
    return true;
}

void TriangleMesh::normalize_to_unit_cube() {
    if (vertices.empty()) return;
    Aabb box = aabb();
    Vec3 c = box.center();
    Vec3 e = box.extent();
    auto scale_of = [](double ext) { return ext > 1e-12 ? 1.0 / ext : 1.0; };
    Vec3 s{scale_of(e.x), scale_of(e.y), scale_of(e.z)};
    for (auto& v : vertices) {
        v = Vec3{(v.x - c.x) * s.x, (v.y - c.y) * s.y, (v.z - c.z) * s.z};
    }
}

TriangleMesh TriangleMesh::transformed(const Pose& pose, const Vec3& scale) const {
    TriangleMesh out;
    out.triangles = triangles;
    out.vertices.reserve(vertices.size());
    for (const auto& v : vertices) {
        Vec3 s{v.x * scale.x, v.y * scale.y, v.z * scale.z};
        out.vertices.push_back(pose.to_world(s));
    }
    return out;
}

void TriangleMesh::append(const TriangleMesh& other) {
    int base = static_cast<int>(vertices.size());
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    for (const auto& t : other.triangles) {
        triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
    }
}

// ------------------------------------------------------------ primitives ----

TriangleMesh make_box_mesh() {
    TriangleMesh m;
    for (int i = 0; i < 8; ++i) {
        m.vertices.push_back({(i & 1) ? 0.5 : -0.5,
                              (i & 2) ? 0.5 : -0.5,
                              (i & 4) ? 0.5 : -0.5});
    }
    auto quad = [&m](int a, int b, int c, int d) {
        m.triangles.push_back({a, b, c});
        m.triangles.push_back({a, c, d});
    };
    quad(0, 2, 3, 1);  // bottom (-z)
    quad(4, 5, 7, 6);  // top (+z)
    quad(0, 1, 5, 4);  // -y
    quad(2, 6, 7, 3);  // +y
    quad(0, 4, 6, 2);  // -x
    quad(1, 3, 7, 5);  // +x
    return m;
}

TriangleMesh make_sphere_mesh() {
    // Icosahedron subdivided 3 times, scaled to radius 0.5.
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
    };
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1},
    };
    for (auto& v : verts) v = v.normalized();

    for (int step = 0; step < 3; ++step) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 m = ((verts[a] + verts[b]) * 0.5).normalized();
            verts.push_back(m);
            int idx = static_cast<int>(verts.size()) - 1;
            midpoint[key] = idx;
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    TriangleMesh m;
    m.vertices.reserve(verts.size());
    for (const auto& v : verts) m.vertices.push_back(v * 0.5);
    m.triangles = std::move(faces);
    return m;
}

namespace {

// Shared rim construction for cylinder/cone: 32 segments, radius 0.5.
constexpr int kSegments = 32;

Vec3 rim_point(int i, double z) {
    double a = 2.0 * kPi * i / kSegments;
    return {0.5 * std::cos(a), 0.5 * std::sin(a), z};
}

}  // namespace

TriangleMesh make_cylinder_mesh() {
    TriangleMesh m;
    int bottom_center = 0, top_center = 1;
    m.vertices.push_back({0, 0, -0.5});
    m.vertices.push_back({0, 0, 0.5});
    for (int i = 0; i < kSegments; ++i) m.vertices.push_back(rim_point(i, -0.5));
    for (int i = 0; i < kSegments; ++i) m.vertices.push_back(rim_point(i, 0.5));
    auto bot = [](int i) { return 2 + i % kSegments; };
    auto top = [](int i) { return 2 + kSegments + i % kSegments; };
    for (int i = 0; i < kSegments; ++i) {
        m.triangles.push_back({bottom_center, bot(i + 1), bot(i)});
        m.triangles.push_back({top_center, top(i), top(i + 1)});
        m.triangles.push_back({bot(i), bot(i + 1), top(i + 1)});
        m.triangles.push_back({bot(i), top(i + 1), top(i)});
    }
    return m;
}

TriangleMesh make_cone_mesh() {
    TriangleMesh m;
    int base_center = 0, apex = 1;
    m.vertices.push_back({0, 0, -0.5});
    m.vertices.push_back({0, 0, 0.5});
    for (int i = 0; i < kSegments; ++i) m.vertices.push_back(rim_point(i, -0.5));
    auto rim = [](int i) { return 2 + i % kSegments; };
    for (int i = 0; i < kSegments; ++i) {
        m.triangles.push_back({base_center, rim(i + 1), rim(i)});
        m.triangles.push_back({apex, rim(i), rim(i + 1)});
    }
    return m;
}

// ----------------------------------------------------------------- shape ----

namespace {

const std::shared_ptr<const TriangleMesh>& cached_primitive(ShapeKind kind) {
    static const auto box = std::make_shared<const TriangleMesh>(make_box_mesh());
    static const auto sphere = std::make_shared<const TriangleMesh>(make_sphere_mesh());
    static const auto cylinder = std::make_shared<const TriangleMesh>(make_cylinder_mesh());
    static const auto cone = std::make_shared<const TriangleMesh>(make_cone_mesh());
    switch (kind) {
        case ShapeKind::Sphere: return sphere;
        case ShapeKind::Cylinder: return cylinder;
        case ShapeKind::Cone: return cone;
        default: return box;
    }
}

}  // namespace

Shape::Shape(ShapeKind kind) : kind_(kind), mesh_(cached_primitive(kind)) {}

Shape::Shape(ShapeKind kind, TriangleMesh mesh, std::string source)
    : kind_(kind),
      mesh_(std::make_shared<const TriangleMesh>(std::move(mesh))),
      source_(std::move(source)) {}

Shape Shape::from_name(const std::string& name) {
    if (name == "box") return Shape(ShapeKind::Box);
    if (name == "sphere") return Shape(ShapeKind::Sphere);
    if (name == "cylinder") return Shape(ShapeKind::Cylinder);
    if (name == "cone") return Shape(ShapeKind::Cone);
    if (name.rfind("mesh:", 0) == 0) {
        std::string path = name.substr(5);
        return Shape(ShapeKind::Mesh, load_mesh(path), path);
    }
    throw EvalError("unknown shape \"" + name +
                    "\" (expected box, sphere, cylinder, cone or mesh:<path>)");
}

std::string Shape::name() const {
    switch (kind_) {
        case ShapeKind::Box: return "box";
        case ShapeKind::Sphere: return "sphere";
        case ShapeKind::Cylinder: return "cylinder";
        case ShapeKind::Cone: return "cone";
        case ShapeKind::Mesh: return "mesh:" + source_;
    }
    return "box";
}

// --------------------------------------------------------------- loaders ----

TriangleMesh parse_obj(const std::string& text, const std::string& origin) {
    TriangleMesh m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string rec;
        if (!(ls >> rec) || rec[0] == '#') continue;
        if (rec == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) {
                throw MeshFormatError(origin + ":" + std::to_string(lineno) +
                                      ": malformed vertex record");
            }
            m.vertices.push_back({x, y, z});
        } else if (rec == "f") {
            std::vector<int> idx;
            std::string item;
            while (ls >> item) {
                // "i", "i/t", "i//n", "i/t/n" - only the vertex index matters.
                size_t slash = item.find('/');
                std::string head = slash == std::string::npos ? item : item.substr(0, slash);
                int i;
                try {
                    i = std::stoi(head);
                } catch (...) {
                    throw MeshFormatError(origin + ":" + std::to_string(lineno) +
                                          ": malformed face index \"" + item + "\"");
                }
                if (i < 1 || i > static_cast<int>(m.vertices.size())) {
                    throw MeshFormatError(origin + ":" + std::to_string(lineno) +
                                          ": face references vertex " + std::to_string(i) +
                                          " (indices are 1-based, " +
                                          std::to_string(m.vertices.size()) +
                                          " vertices seen)");
                }
                idx.push_back(i - 1);
            }
            if (idx.size() < 3) {
                throw MeshFormatError(origin + ":" + std::to_string(lineno) +
                                      ": face with fewer than 3 vertices");
            }
            for (size_t k = 1; k + 1 < idx.size(); ++k) {
                m.triangles.push_back({idx[0], idx[k], idx[k + 1]});
            }
        }
        // Other record types (vn, vt, o, g, s, usemtl, mtllib, ...) are skipped.
    }
    if (m.triangles.empty()) {
        throw MeshFormatError(origin + ": no faces found");
    }
    return m;
}

TriangleMesh parse_stl_binary(const std::string& bytes, const std::string& origin) {
    if (bytes.size() < 84) throw MeshFormatError(origin + ": truncated STL header");
    std::uint32_t count;
    std::memcpy(&count, bytes.data() + 80, 4);
    size_t expected = 84 + static_cast<size_t>(count) * 50;
    if (bytes.size() < expected) {
        throw MeshFormatError(origin + ": STL declares " + std::to_string(count) +
                              " triangles but the file is too short");
    }

    TriangleMesh m;
    // Weld exactly-equal vertices so the result can pass the watertight check.
    std::map<std::array<double, 3>, int> index;
    auto add_vertex = [&](const float* f) {
        std::array<double, 3> key{static_cast<double>(f[0]), static_cast<double>(f[1]),
                                  static_cast<double>(f[2])};
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        m.vertices.push_back({key[0], key[1], key[2]});
        int idx = static_cast<int>(m.vertices.size()) - 1;
        index[key] = idx;
        return idx;
    };
    for (std::uint32_t t = 0; t < count; ++t) {
        const char* rec = bytes.data() + 84 + static_cast<size_t>(t) * 50;
        float values[12];
        std::memcpy(values, rec, 48);  // normal (ignored) + 3 vertices
        int a = add_vertex(values + 3);
        int b = add_vertex(values + 6);
        int c = add_vertex(values + 9);
        if (a == b || b == c || a == c) continue;  // degenerate facet
        m.triangles.push_back({a, b, c});
    }
    if (m.triangles.empty()) throw MeshFormatError(origin + ": no facets found");
    return m;
}

TriangleMesh load_mesh(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open mesh file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string data = buf.str();

    auto ends_with = [&path](const char* suffix) {
        std::string s(suffix);
        if (path.size() < s.size()) return false;
        std::string tail = path.substr(path.size() - s.size());
        for (auto& c : tail) c = static_cast<char>(std::tolower(c));
        return tail == s;
    };

    TriangleMesh m;
    if (ends_with(".obj")) {
        m = parse_obj(data, path);
    } else if (ends_with(".stl")) {
        m = parse_stl_binary(data, path);
    } else {
        throw MeshFormatError(path + ": unsupported mesh format (want .obj or .stl)");
    }
    m.normalize_to_unit_cube();
    return m;
}

}  // namespace scenium
