#include "scenium/value.hpp"

#include <cmath>
#include <cstdio>

#include "scenium/errors.hpp"

namespace scenium {

std::string BehaviorSpec::name() const {
    switch (kind) {
        case Kind::Stationary: return "Stationary";
        case Kind::ConstantVelocity: return "ConstantVelocity";
        case Kind::Waypoints: return "Waypoints";
        case Kind::RandomWalk: return "RandomWalk";
    }
    return "?";
}

const char* Value::type_name() const {
    switch (v_.index()) {
        case 0: return "number";
        case 1: return "boolean";
        case 2: return "string";
        case 3: return "vector";
        case 4: return "orientation";
        case 5: return "region";
        case 6: return "behavior";
        case 7: return "object";
    }
    return "?";
}

namespace {
[[noreturn]] void type_error(const char* wanted, const Value& v) {
    throw EvalError(std::string("expected ") + wanted + ", got " + v.type_name());
}
}  // namespace

double Value::as_number() const {
    if (auto* p = std::get_if<double>(&v_)) return *p;
    type_error("a number", *this);
}

bool Value::as_bool() const {
    if (auto* p = std::get_if<bool>(&v_)) return *p;
    type_error("a boolean", *this);
}

const std::string& Value::as_string() const {
    if (auto* p = std::get_if<std::string>(&v_)) return *p;
    type_error("a string", *this);
}

const Vec3& Value::as_vec() const {
    if (auto* p = std::get_if<Vec3>(&v_)) return *p;
    type_error("a vector", *this);
}

const Orientation& Value::as_orientation() const {
    if (auto* p = std::get_if<Orientation>(&v_)) return *p;
    type_error("an orientation", *this);
}

const Region& Value::as_region() const {
    if (auto* p = std::get_if<Region>(&v_)) return *p;
    type_error("a region", *this);
}

const BehaviorSpec& Value::as_behavior() const {
    if (auto* p = std::get_if<BehaviorSpec>(&v_)) return *p;
    type_error("a behavior", *this);
}

ObjectRef Value::as_object() const {
    if (auto* p = std::get_if<ObjectRef>(&v_)) return *p;
    type_error("an object", *this);
}

bool Value::equals(const Value& o) const {
    if (is_number() && o.is_number()) return as_number() == o.as_number();
    if (is_bool() && o.is_bool()) return as_bool() == o.as_bool();
    if (is_string() && o.is_string()) return as_string() == o.as_string();
    if (is_vec() && o.is_vec()) return as_vec() == o.as_vec();
    if (is_object() && o.is_object()) return as_object().index == o.as_object().index;
    if (is_orientation() && o.is_orientation()) return as_orientation().approx_equal(o.as_orientation(), 0.0);
    throw EvalError(std::string("cannot compare ") + type_name() + " with " + o.type_name());
}

std::string Value::to_string() const {
    char buf[96];
    switch (v_.index()) {
        case 0:
            std::snprintf(buf, sizeof buf, "%g", as_number());
            return buf;
        case 1: return as_bool() ? "true" : "false";
        case 2: return "\"" + as_string() + "\"";
        case 3: {
            const Vec3& v = as_vec();
            std::snprintf(buf, sizeof buf, "(%g, %g, %g)", v.x, v.y, v.z);
            return buf;
        }
        case 4: {
            const Orientation& o = as_orientation();
            std::snprintf(buf, sizeof buf, "orientation(yaw=%g, pitch=%g, roll=%g)", o.yaw(),
                          o.pitch(), o.roll());
            return buf;
        }
        case 5: return "<region>";
        case 6: return "<behavior " + as_behavior().name() + ">";
        case 7: {
            std::snprintf(buf, sizeof buf, "<object #%d>", as_object().index);
            return buf;
        }
    }
    return "?";
}

}  // namespace scenium
