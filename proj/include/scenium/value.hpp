#pragma once

#include <string>
#include <variant>
#include <vector>

#include "scenium/geom.hpp"
#include "scenium/region.hpp"

namespace scenium {

// Reference to an object in the scene under construction, by index.
struct ObjectRef {
    int index = -1;
};

// Declarative motion profile attached to an object and interpreted by the
// simulator.  Parameters not used by a given kind are left at zero.
struct BehaviorSpec {
    enum class Kind { Stationary, ConstantVelocity, Waypoints, RandomWalk };

    Kind kind = Kind::Stationary;
    Vec3 velocity;                // ConstantVelocity, units per second
    double speed = 0.0;           // Waypoints / RandomWalk
    double turn_rate = 0.0;       // RandomWalk, radians per second
    std::vector<Vec3> waypoints;  // Waypoints, visited in order

    std::string name() const;
};

// Dynamically typed result of expression evaluation.
class Value {
  public:
    Value() : v_(false) {}
    Value(double n) : v_(n) {}
    Value(bool b) : v_(b) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(const Vec3& v) : v_(v) {}
    Value(const Orientation& o) : v_(o) {}
    Value(Region r) : v_(std::move(r)) {}
    Value(BehaviorSpec b) : v_(std::move(b)) {}
    Value(ObjectRef r) : v_(r) {}

    const char* type_name() const;

    bool is_number() const { return std::holds_alternative<double>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_vec() const { return std::holds_alternative<Vec3>(v_); }
    bool is_orientation() const { return std::holds_alternative<Orientation>(v_); }
    bool is_region() const { return std::holds_alternative<Region>(v_); }
    bool is_behavior() const { return std::holds_alternative<BehaviorSpec>(v_); }
    bool is_object() const { return std::holds_alternative<ObjectRef>(v_); }

    // Checked accessors; each throws EvalError naming the actual type.
    double as_number() const;
    bool as_bool() const;
    const std::string& as_string() const;
    const Vec3& as_vec() const;
    const Orientation& as_orientation() const;
    const Region& as_region() const;
    const BehaviorSpec& as_behavior() const;
    ObjectRef as_object() const;

    // Structural equality for `==`/`!=`; comparing unrelated types throws.
    bool equals(const Value& o) const;

    // Short human-readable rendering for messages and serialization.
    std::string to_string() const;

  private:
    std::variant<double, bool, std::string, Vec3, Orientation, Region, BehaviorSpec, ObjectRef> v_;
};

}  // namespace scenium
