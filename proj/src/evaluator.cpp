#include "scenium/evaluator.hpp"

#include <cmath>

#include "scenium/errors.hpp"
#include "scenium/visibility.hpp"

namespace scenium {

namespace {

const SceneObject& deref(const Scene* scene, ObjectRef r) {
    if (!scene || r.index < 0 || r.index >= static_cast<int>(scene->objects.size()))
        throw EvalError("dangling object reference");
    return scene->objects[static_cast<size_t>(r.index)];
}

Rng& need_rng(EvalContext& ctx) {
    if (!ctx.rng) throw EvalError("random values are not available in this context");
    return *ctx.rng;
}

Value property_of(const Value& base, const std::string& prop, EvalContext& ctx) {
    if (base.is_vec()) {
        const Vec3& v = base.as_vec();
        if (prop == "x") return v.x;
        if (prop == "y") return v.y;
        if (prop == "z") return v.z;
        throw EvalError("vector has no property '" + prop + "'");
    }
    if (base.is_orientation()) {
        const Orientation& o = base.as_orientation();
        if (prop == "yaw") return o.yaw();
        if (prop == "pitch") return o.pitch();
        if (prop == "roll") return o.roll();
        throw EvalError("orientation has no property '" + prop + "'");
    }
    if (base.is_object()) {
        const SceneObject& o = deref(ctx.scene, base.as_object());
        if (prop == "position") return o.position;
        if (prop == "yaw") return o.yaw;
        if (prop == "pitch") return o.pitch;
        if (prop == "roll") return o.roll;
        if (prop == "width") return o.dims.x;
        if (prop == "length") return o.dims.y;
        if (prop == "height") return o.dims.z;
        if (prop == "orientation") return o.orientation();
        if (prop == "parentOrientation") return o.parent_orientation;
        if (prop == "baseOffset") return o.base_offset;
        if (prop == "allowCollisions") return o.allow_collisions;
        if (prop == "visibleDistance") return o.visible_distance;
        if (prop == "rayDensity") return o.ray_density;
        if (prop == "viewAngles") return Vec3{o.view_angle_yaw, o.view_angle_pitch, 0.0};
        if (prop == "shape") return o.shape.name();
        if (prop == "name") return o.name;
        if (prop == "kind") return o.kind;
        if (prop == "behavior") return o.behavior;
        if (prop == "color") {
            if (!o.color) throw EvalError("object '" + o.name + "' has no color");
            return *o.color;
        }
        auto it = o.extras.find(prop);
        if (it != o.extras.end()) return it->second;
        throw EvalError("object '" + o.name + "' has no property '" + prop + "'");
    }
    throw EvalError(std::string(base.type_name()) + " has no properties");
}

Value call_builtin(const Expr& e, EvalContext& ctx) {
    const std::string& fn = e.text;
    std::vector<Value> args;
    args.reserve(e.children.size());
    for (const auto& c : e.children) args.push_back(evaluate(*c, ctx));

    auto arity = [&](size_t n) {
        if (args.size() != n)
            throw EvalError(fn + " expects " + std::to_string(n) + " argument(s), got " +
                            std::to_string(args.size()));
    };

    if (fn == "Range") {
        arity(2);
        double lo = args[0].as_number(), hi = args[1].as_number();
        if (lo > hi) throw EvalError("Range requires lo <= hi");
        return need_rng(ctx).range(lo, hi);
    }
    if (fn == "Normal") {
        arity(2);
        double mu = args[0].as_number(), sigma = args[1].as_number();
        if (sigma < 0.0) throw EvalError("Normal requires a nonnegative stddev");
        return need_rng(ctx).normal(mu, sigma);
    }
    if (fn == "Uniform") {
        if (args.empty()) throw EvalError("Uniform requires at least one option");
        return args[need_rng(ctx).below(args.size())];
    }
    if (fn == "BoxRegion") {
        arity(2);
        Vec3 dims = args[1].as_vec();
        if (dims.x <= 0.0 || dims.y <= 0.0 || dims.z <= 0.0)
            throw EvalError("BoxRegion requires positive dimensions");
        return Region::box(args[0].as_vec(), dims);
    }
    if (fn == "AllRegion") {
        arity(0);
        return Region::all();
    }
    if (fn == "Stationary") {
        arity(0);
        return BehaviorSpec{};
    }
    if (fn == "ConstantVelocity") {
        BehaviorSpec b;
        b.kind = BehaviorSpec::Kind::ConstantVelocity;
        if (args.size() == 1) {
            b.velocity = args[0].as_vec();
        } else {
            arity(3);
            b.velocity = {args[0].as_number(), args[1].as_number(), args[2].as_number()};
        }
        return b;
    }
    if (fn == "Waypoints") {
        if (args.size() < 2) throw EvalError("Waypoints requires a speed and at least one point");
        BehaviorSpec b;
        b.kind = BehaviorSpec::Kind::Waypoints;
        b.speed = args[0].as_number();
        if (b.speed <= 0.0) throw EvalError("Waypoints requires a positive speed");
        for (size_t i = 1; i < args.size(); ++i) b.waypoints.push_back(args[i].as_vec());
        return b;
    }
    if (fn == "RandomWalk") {
        arity(2);
        BehaviorSpec b;
        b.kind = BehaviorSpec::Kind::RandomWalk;
        b.speed = args[0].as_number();
        b.turn_rate = args[1].as_number();
        if (b.speed <= 0.0) throw EvalError("RandomWalk requires a positive speed");
        return b;
    }
    throw EvalError("unknown function '" + fn + "'");
}

// Visibility of a bare point from an object: one ray, every other object
// occludes.  Ties between the point and an occluder count as occluded.
bool can_see_point(const Scene& scene, int viewer, const Vec3& p) {
    const SceneObject& v = scene.object(viewer);
    Vec3 d = p - v.position;
    double dist = d.norm();
    if (dist > v.visible_distance) return false;
    if (dist < 1e-12) return true;

    Vec3 d_local = v.orientation().inverse().apply(d);
    double horiz = std::hypot(d_local.x, d_local.y);
    double az = (horiz < 1e-300) ? 0.0 : std::atan2(-d_local.x, d_local.y);
    double el = std::atan2(d_local.z, horiz);
    if (v.view_angle_yaw < 2.0 * kPi - 1e-12 && std::abs(az) > v.view_angle_yaw / 2.0)
        return false;
    if (std::abs(el) > v.view_angle_pitch / 2.0) return false;

    Vec3 dir = d / dist;
    for (size_t i = 0; i < scene.objects.size(); ++i) {
        if (static_cast<int>(i) == viewer) continue;
        if (scene.objects[i].collision().bvh->raycast(v.position, dir, 1e-9,
                                                      dist + kOcclusionTol))
            return false;
    }
    return true;
}

}  // namespace

Vec3 point_of(const Value& v, const Scene& scene) {
    if (v.is_vec()) return v.as_vec();
    if (v.is_object()) return deref(&scene, v.as_object()).position;
    throw EvalError(std::string("expected a point or an object, got ") + v.type_name());
}

Value evaluate(const Expr& e, EvalContext& ctx) {
    switch (e.kind) {
        case ExprKind::Number: return e.number;
        case ExprKind::String: return e.text;
        case ExprKind::Boolean: return e.boolean;
        case ExprKind::Vector: {
            Vec3 v{eval_number(*e.children[0], ctx), eval_number(*e.children[1], ctx),
                   eval_number(*e.children[2], ctx)};
            return v;
        }
        case ExprKind::Name: {
            if (!ctx.scene) throw EvalError("'" + e.text + "' is not defined");
            auto it = ctx.scene->globals.find(e.text);
            if (it == ctx.scene->globals.end())
                throw EvalError("'" + e.text + "' is not defined");
            return it->second;
        }
        case ExprKind::Property:
            return property_of(evaluate(*e.children[0], ctx), e.text, ctx);
        case ExprKind::Neg: {
            Value v = evaluate(*e.children[0], ctx);
            if (v.is_number()) return -v.as_number();
            if (v.is_vec()) return -v.as_vec();
            throw EvalError(std::string("cannot negate ") + v.type_name());
        }
        case ExprKind::Deg: return deg2rad(eval_number(*e.children[0], ctx));
        case ExprKind::Add: {
            Value a = evaluate(*e.children[0], ctx), b = evaluate(*e.children[1], ctx);
            if (a.is_number() && b.is_number()) return a.as_number() + b.as_number();
            if (a.is_vec() && b.is_vec()) return a.as_vec() + b.as_vec();
            throw EvalError(std::string("cannot add ") + a.type_name() + " and " + b.type_name());
        }
        case ExprKind::Sub: {
            Value a = evaluate(*e.children[0], ctx), b = evaluate(*e.children[1], ctx);
            if (a.is_number() && b.is_number()) return a.as_number() - b.as_number();
            if (a.is_vec() && b.is_vec()) return a.as_vec() - b.as_vec();
            throw EvalError(std::string("cannot subtract ") + b.type_name() + " from " +
                            a.type_name());
        }
        case ExprKind::Mul: {
            Value a = evaluate(*e.children[0], ctx), b = evaluate(*e.children[1], ctx);
            if (a.is_number() && b.is_number()) return a.as_number() * b.as_number();
            if (a.is_number() && b.is_vec()) return b.as_vec() * a.as_number();
            if (a.is_vec() && b.is_number()) return a.as_vec() * b.as_number();
            throw EvalError(std::string("cannot multiply ") + a.type_name() + " by " +
                            b.type_name());
        }
        case ExprKind::Div: {
            Value a = evaluate(*e.children[0], ctx), b = evaluate(*e.children[1], ctx);
            double den = b.as_number();
            if (den == 0.0) throw EvalError("division by zero");
            if (a.is_number()) return a.as_number() / den;
            if (a.is_vec()) return a.as_vec() / den;
            throw EvalError(std::string("cannot divide ") + a.type_name());
        }
        case ExprKind::Lt: return eval_number(*e.children[0], ctx) < eval_number(*e.children[1], ctx);
        case ExprKind::Le: return eval_number(*e.children[0], ctx) <= eval_number(*e.children[1], ctx);
        case ExprKind::Gt: return eval_number(*e.children[0], ctx) > eval_number(*e.children[1], ctx);
        case ExprKind::Ge: return eval_number(*e.children[0], ctx) >= eval_number(*e.children[1], ctx);
        case ExprKind::Eq:
            return evaluate(*e.children[0], ctx).equals(evaluate(*e.children[1], ctx));
        case ExprKind::Ne:
            return !evaluate(*e.children[0], ctx).equals(evaluate(*e.children[1], ctx));
        case ExprKind::And: {
            bool a = eval_bool(*e.children[0], ctx);
            bool b = eval_bool(*e.children[1], ctx);
            return a && b;
        }
        case ExprKind::Or: {
            bool a = eval_bool(*e.children[0], ctx);
            bool b = eval_bool(*e.children[1], ctx);
            return a || b;
        }
        case ExprKind::Not: return !eval_bool(*e.children[0], ctx);
        case ExprKind::Call: return call_builtin(e, ctx);
        case ExprKind::DistanceTo: {
            if (!ctx.scene) throw EvalError("no scene in this context");
            Vec3 a = point_of(evaluate(*e.children[0], ctx), *ctx.scene);
            Vec3 b = point_of(evaluate(*e.children[1], ctx), *ctx.scene);
            return (a - b).norm();
        }
        case ExprKind::In: {
            Value lhs = evaluate(*e.children[0], ctx);
            Value rhs = evaluate(*e.children[1], ctx);
            if (!ctx.scene) throw EvalError("no scene in this context");
            return rhs.as_region().contains(point_of(lhs, *ctx.scene));
        }
        case ExprKind::CanSee: {
            if (!ctx.scene) throw EvalError("no scene in this context");
            Value viewer = evaluate(*e.children[0], ctx);
            Value target = evaluate(*e.children[1], ctx);
            int vi = viewer.as_object().index;
            if (target.is_vec()) return can_see_point(*ctx.scene, vi, target.as_vec());
            return can_see_object(*ctx.scene, vi, target.as_object().index);
        }
        case ExprKind::Always:
        case ExprKind::Eventually:
        case ExprKind::Next:
        case ExprKind::Until:
            throw EvalError("temporal operators are only allowed in requirements");
        case ExprKind::New:
            throw EvalError("object construction is not allowed in this context");
    }
    throw EvalError("unhandled expression");
}

double eval_number(const Expr& e, EvalContext& ctx) { return evaluate(e, ctx).as_number(); }
bool eval_bool(const Expr& e, EvalContext& ctx) { return evaluate(e, ctx).as_bool(); }
Vec3 eval_vec(const Expr& e, EvalContext& ctx) { return evaluate(e, ctx).as_vec(); }

}  // namespace scenium
