#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scenium/ast.hpp"
#include "scenium/collision.hpp"
#include "scenium/mesh.hpp"
#include "scenium/value.hpp"

namespace scenium {

// A placed object.  `yaw`/`pitch`/`roll` are intrinsic rotations applied on
// top of `parent_orientation`; dims are (width, length, height) = extents
// along local x/y/z.
struct SceneObject {
    std::string name;
    std::string kind = "Object";

    Vec3 position;
    Orientation parent_orientation;
    double yaw = 0.0, pitch = 0.0, roll = 0.0;
    Vec3 dims{1.0, 1.0, 1.0};
    Shape shape;
    Vec3 base_offset{0.0, 0.0, -0.5};
    bool allow_collisions = false;
    double view_angle_yaw = 2.0 * kPi;   // horizontal aperture of the view cone
    double view_angle_pitch = kPi;       // vertical aperture
    double visible_distance = 50.0;
    double ray_density = 1.0;            // visibility rays per degree
    std::optional<Vec3> color;
    BehaviorSpec behavior;
    std::map<std::string, Value> extras;

    Orientation orientation() const {
        return parent_orientation.compose(Orientation::from_euler(yaw, pitch, roll));
    }
    Pose pose() const { return Pose{position, orientation()}; }

    // World-space point the object stands on (center of its base by default).
    Vec3 base_point() const { return position + orientation().apply(base_offset); }

    // World-space collision mesh, cached until pose or size changes.
    const CollisionMesh& collision() const;

  private:
    struct CacheKey {
        Vec3 position, dims;
        double yaw, pitch, roll;
        Orientation parent;
        bool matches(const SceneObject& o) const;
    };
    mutable std::shared_ptr<const CollisionMesh> cache_;
    mutable CacheKey cache_key_{};
};

struct Scene {
    std::vector<SceneObject> objects;
    int ego = -1;  // index into objects, -1 when unset
    std::map<std::string, Value> globals;
    std::uint64_t seed = 0;
    int rejections = 0;

    const SceneObject& object(int i) const { return objects.at(static_cast<size_t>(i)); }
    SceneObject& object(int i) { return objects.at(static_cast<size_t>(i)); }
    int find_object(const std::string& name) const;
};

// An object kind: a name, a parent kind, and default property expressions
// evaluated when an object of the kind is constructed.
struct ObjectKind {
    std::string name;
    std::string parent;  // empty only for the root kind "Object"
    std::vector<std::pair<std::string, const Expr*>> defaults;
};

// Registry of object kinds.  Construction loads the built-in library
// (Ball, Chair, Plane, Toy, Vacuum, Building, Car); `register_kinds` adds
// kinds defined by a program.
class KindTable {
  public:
    KindTable();

    void register_kinds(const Program& program);

    bool has(const std::string& name) const { return kinds_.count(name) != 0; }
    const ObjectKind& get(const std::string& name) const;

    // Default property expressions for `kind`, ancestors first so later
    // (more derived) entries override earlier ones.
    std::vector<std::pair<std::string, const Expr*>> chain(const std::string& kind) const;

  private:
    void register_one(const Statement& stmt);

    std::map<std::string, ObjectKind> kinds_;
    std::vector<std::shared_ptr<Program>> keep_alive_;
};

}  // namespace scenium
