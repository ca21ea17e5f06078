#include "scenium/specifiers.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "scenium/errors.hpp"

namespace scenium {

namespace {

// Built-in properties in canonical default order.  Size-related ones come
// first so computed defaults (baseOffset) and size readers follow them.
const char* kBuiltinProps[] = {
    "shape",          "width",      "length",         "height",     "baseOffset",
    "position",       "parentOrientation", "yaw",     "pitch",      "roll",
    "allowCollisions", "viewAngles", "visibleDistance", "rayDensity", "color",
    "behavior",
};

int builtin_index(const std::string& prop) {
    int i = 0;
    for (const char* p : kBuiltinProps) {
        if (prop == p) return i;
        ++i;
    }
    return -1;
}

std::map<std::string, PropClaim> claims_for(SpecifierKind kind, const std::string& with_prop) {
    using K = SpecifierKind;
    switch (kind) {
        case K::At: return {{"position", {1, false}}};
        case K::OffsetBy:
        case K::LeftOf:
        case K::RightOf:
        case K::AheadOf:
        case K::Behind:
        case K::Above:
        case K::Below:
            return {{"position", {1, false}}, {"parentOrientation", {3, false}}};
        case K::On: return {{"position", {1, true}}, {"parentOrientation", {2, false}}};
        case K::Facing:
            return {{"yaw", {1, false}}, {"pitch", {1, false}}, {"roll", {1, false}}};
        case K::FacingToward: return {{"yaw", {1, false}}};
        case K::FacingDirectlyToward: return {{"yaw", {1, false}}, {"pitch", {1, false}}};
        case K::With: return {{with_prop, {1, false}}};
        case K::VisibleFrom: return {{"position", {3, false}}};
    }
    throw UnknownSpecifier("unknown specifier");
}

}  // namespace

std::map<std::string, PropClaim> specifier_claims(const Specifier& s) {
    return claims_for(s.kind, s.prop);
}

std::map<std::string, PropClaim> specifier_claims_by_name(const std::string& name,
                                                          const std::string& with_prop) {
    using K = SpecifierKind;
    static const std::map<std::string, SpecifierKind> kByName = {
        {"at", K::At},
        {"offset by", K::OffsetBy},
        {"left of", K::LeftOf},
        {"right of", K::RightOf},
        {"ahead of", K::AheadOf},
        {"behind", K::Behind},
        {"above", K::Above},
        {"below", K::Below},
        {"on", K::On},
        {"facing", K::Facing},
        {"facing toward", K::FacingToward},
        {"facing directly toward", K::FacingDirectlyToward},
        {"with", K::With},
        {"visible from", K::VisibleFrom},
    };
    auto it = kByName.find(name);
    if (it == kByName.end()) throw UnknownSpecifier("unknown specifier '" + name + "'");
    return claims_for(it->second, with_prop.empty() ? "property" : with_prop);
}

std::vector<std::string> specifier_reads(const Specifier& s) {
    using K = SpecifierKind;
    switch (s.kind) {
        case K::LeftOf:
        case K::RightOf: return {"width"};
        case K::AheadOf:
        case K::Behind: return {"length"};
        case K::Above:
        case K::Below: return {"height"};
        case K::On: return {"yaw", "pitch", "roll", "baseOffset", "parentOrientation"};
        case K::FacingToward:
        case K::FacingDirectlyToward: return {"position", "parentOrientation"};
        default: return {};
    }
}

SpecifierPlan resolve_specifiers(const std::vector<Specifier>& specs,
                                 const std::vector<std::string>& extra_default_props) {
    struct Claimant {
        int spec;
        PropClaim claim;
    };
    std::map<std::string, std::vector<Claimant>> producers_for, modifiers_for;
    for (size_t i = 0; i < specs.size(); ++i) {
        for (const auto& [prop, claim] : specifier_claims(specs[i])) {
            auto& side = claim.modifying ? modifiers_for[prop] : producers_for[prop];
            side.push_back({static_cast<int>(i), claim});
        }
    }

    auto spec_name = [&](int i) { return std::string(specifier_kind_name(specs[i].kind)); };

    // Ownership: lowest priority number wins; an equal-priority tie is a
    // conflict.  A modifier with nothing to modify becomes the producer.
    std::map<std::string, int> owner;     // prop -> spec index
    std::map<std::string, int> modifier;  // prop -> spec index
    std::set<std::string> claimed;
    for (const auto& [prop, cs] : producers_for) claimed.insert(prop);
    for (const auto& [prop, cs] : modifiers_for) claimed.insert(prop);

    for (const std::string& prop : claimed) {
        int best = -1;
        if (auto it = producers_for.find(prop); it != producers_for.end()) {
            const auto& cs = it->second;
            int best_prio = cs[0].claim.priority;
            best = cs[0].spec;
            for (size_t k = 1; k < cs.size(); ++k) {
                if (cs[k].claim.priority < best_prio) {
                    best_prio = cs[k].claim.priority;
                    best = cs[k].spec;
                } else if (cs[k].claim.priority == best_prio) {
                    throw ConflictError("property '" + prop + "' specified at priority " +
                                        std::to_string(best_prio) + " by both '" +
                                        spec_name(best) + "' and '" + spec_name(cs[k].spec) +
                                        "'");
                }
            }
        }
        if (auto it = modifiers_for.find(prop); it != modifiers_for.end()) {
            const auto& ms = it->second;
            if (ms.size() > 1)
                throw ConflictError("property '" + prop + "' modified by both '" +
                                    spec_name(ms[0].spec) + "' and '" + spec_name(ms[1].spec) +
                                    "'");
            if (best < 0)
                best = ms[0].spec;  // nothing to modify: the modifier produces
            else
                modifier[prop] = ms[0].spec;
        }
        owner[prop] = best;
    }

    std::map<int, std::vector<std::string>> owned_props;
    for (const auto& [prop, spec] : owner) owned_props[spec].push_back(prop);

    // Nodes: defaults for unowned properties, one application per specifier
    // that owns anything, one modification per surviving modifier.
    // Dominated specifiers (owning nothing, modifying nothing) are skipped.
    struct Node {
        PlanAction act;
        std::tuple<int, int, std::string, int> key;
        std::set<int> in;
        std::vector<int> out;
    };
    std::vector<Node> nodes;
    std::map<std::string, int> producer_node, modifier_node;

    auto add_default = [&](const std::string& prop, int order) {
        Node n;
        n.act.type = PlanAction::Type::Default;
        n.act.prop = prop;
        n.key = {0, order, prop, 0};
        producer_node[prop] = static_cast<int>(nodes.size());
        nodes.push_back(std::move(n));
    };
    int bi = 0;
    for (const char* prop : kBuiltinProps) {
        if (!owner.count(prop)) add_default(prop, bi);
        ++bi;
    }
    std::vector<std::string> extras = extra_default_props;
    std::sort(extras.begin(), extras.end());
    for (const std::string& prop : extras)
        if (!owner.count(prop) && !producer_node.count(prop)) add_default(prop, 1000);

    for (size_t i = 0; i < specs.size(); ++i) {
        auto it = owned_props.find(static_cast<int>(i));
        std::vector<std::string> modified;
        for (const auto& [prop, m] : modifier)
            if (m == static_cast<int>(i)) modified.push_back(prop);
        if (it == owned_props.end() && modified.empty()) continue;  // dominated

        // A specifier runs as a single action.  If it modifies anything it is
        // a Modify action; any properties it owns outright ride along.
        Node n;
        n.act.spec = &specs[i];
        n.act.type = modified.empty() ? PlanAction::Type::Apply : PlanAction::Type::Modify;
        if (it != owned_props.end()) n.act.owned = it->second;
        n.act.owned.insert(n.act.owned.end(), modified.begin(), modified.end());
        std::sort(n.act.owned.begin(), n.act.owned.end());
        std::string joined;
        for (const auto& p : n.act.owned) joined += p + ",";
        n.key = {n.act.type == PlanAction::Type::Modify ? 2 : 1,
                 static_cast<int>(specs[i].kind), joined, static_cast<int>(i)};
        int ni = static_cast<int>(nodes.size());
        if (it != owned_props.end())
            for (const auto& p : it->second) producer_node[p] = ni;
        for (const auto& p : modified) modifier_node[p] = ni;
        nodes.push_back(std::move(n));
    }

    auto add_edge = [&](int from, int to) {
        if (from == to) return;
        if (nodes[static_cast<size_t>(to)].in.insert(from).second)
            nodes[static_cast<size_t>(from)].out.push_back(to);
    };

    for (size_t ni = 0; ni < nodes.size(); ++ni) {
        Node& n = nodes[ni];
        if (n.act.type == PlanAction::Type::Default) {
            // the built-in baseOffset default derives from height
            if (n.act.prop == "baseOffset" && producer_node.count("height"))
                add_edge(producer_node["height"], static_cast<int>(ni));
            continue;
        }
        if (n.act.type == PlanAction::Type::Modify) {
            for (const auto& p : n.act.owned)
                if (producer_node.count(p)) add_edge(producer_node[p], static_cast<int>(ni));
        }
        for (const std::string& r : specifier_reads(*n.act.spec)) {
            if (std::find(n.act.owned.begin(), n.act.owned.end(), r) != n.act.owned.end())
                continue;
            if (producer_node.count(r)) add_edge(producer_node[r], static_cast<int>(ni));
            if (modifier_node.count(r)) add_edge(modifier_node[r], static_cast<int>(ni));
        }
    }

    // Kahn's algorithm, always taking the smallest canonical key so the
    // resulting order does not depend on the source order of specifiers.
    std::vector<int> indeg(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) indeg[i] = static_cast<int>(nodes[i].in.size());
    std::vector<bool> done(nodes.size(), false);
    SpecifierPlan plan;
    for (size_t step = 0; step < nodes.size(); ++step) {
        int pick = -1;
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (done[i] || indeg[i] != 0) continue;
            if (pick < 0 || nodes[i].key < nodes[static_cast<size_t>(pick)].key)
                pick = static_cast<int>(i);
        }
        if (pick < 0) {
            std::string names;
            for (size_t i = 0; i < nodes.size(); ++i) {
                if (done[i] || !nodes[i].act.spec) continue;
                if (!names.empty()) names += ", ";
                names += specifier_kind_name(nodes[i].act.spec->kind);
            }
            throw CycleError("circular specifier dependencies among: " + names);
        }
        done[static_cast<size_t>(pick)] = true;
        for (int to : nodes[static_cast<size_t>(pick)].out) --indeg[static_cast<size_t>(to)];
        plan.actions.push_back(nodes[static_cast<size_t>(pick)].act);
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Plan execution.

namespace {

const SceneObject& deref_object(const Value& v, EvalContext& ctx) {
    ObjectRef r = v.as_object();
    if (!ctx.scene || r.index < 0 || r.index >= static_cast<int>(ctx.scene->objects.size()))
        throw EvalError("dangling object reference");
    return ctx.scene->objects[static_cast<size_t>(r.index)];
}

Rng& need_rng(EvalContext& ctx) {
    if (!ctx.rng) throw EvalError("random values are not available in this context");
    return *ctx.rng;
}

double positive_number(const Value& v, const std::string& prop) {
    double n = v.as_number();
    if (!(n > 0.0)) throw EvalError("property '" + prop + "' must be positive");
    return n;
}

void assign_property(SceneObject& obj, const std::string& prop, const Value& v) {
    if (prop == "position") { obj.position = v.as_vec(); return; }
    if (prop == "parentOrientation") { obj.parent_orientation = v.as_orientation(); return; }
    if (prop == "yaw") { obj.yaw = v.as_number(); return; }
    if (prop == "pitch") { obj.pitch = v.as_number(); return; }
    if (prop == "roll") { obj.roll = v.as_number(); return; }
    if (prop == "width") { obj.dims.x = positive_number(v, prop); return; }
    if (prop == "length") { obj.dims.y = positive_number(v, prop); return; }
    if (prop == "height") { obj.dims.z = positive_number(v, prop); return; }
    if (prop == "shape") { obj.shape = Shape::from_name(v.as_string()); return; }
    if (prop == "baseOffset") { obj.base_offset = v.as_vec(); return; }
    if (prop == "allowCollisions") { obj.allow_collisions = v.as_bool(); return; }
    if (prop == "visibleDistance") {
        double n = v.as_number();
        if (n < 0.0) throw EvalError("property 'visibleDistance' must be nonnegative");
        obj.visible_distance = n;
        return;
    }
    if (prop == "rayDensity") { obj.ray_density = positive_number(v, prop); return; }
    if (prop == "viewAngles") {
        Vec3 a = v.as_vec();
        if (!(a.x > 0.0) || a.x > 2.0 * kPi + 1e-9 || !(a.y > 0.0) || a.y > kPi + 1e-9)
            throw EvalError("viewAngles must be in (0, 360 deg] x (0, 180 deg]");
        obj.view_angle_yaw = a.x;
        obj.view_angle_pitch = a.y;
        return;
    }
    if (prop == "color") { obj.color = v.as_vec(); return; }
    if (prop == "behavior") { obj.behavior = v.as_behavior(); return; }
    obj.extras[prop] = v;
}

double axis_component(const Vec3& v, int axis) {
    return axis == 0 ? v.x : axis == 1 ? v.y : v.z;
}

Vec3 axis_vec(int axis, double value) {
    Vec3 v;
    (axis == 0 ? v.x : axis == 1 ? v.y : v.z) = value;
    return v;
}

bool owns(const PlanAction& act, const char* prop) {
    return std::find(act.owned.begin(), act.owned.end(), prop) != act.owned.end();
}

void apply_directional(SceneObject& obj, const PlanAction& act, EvalContext& ctx) {
    const Specifier& s = *act.spec;
    int axis;
    double sign;
    switch (s.kind) {
        case SpecifierKind::LeftOf: axis = 0; sign = -1.0; break;
        case SpecifierKind::RightOf: axis = 0; sign = 1.0; break;
        case SpecifierKind::AheadOf: axis = 1; sign = 1.0; break;
        case SpecifierKind::Behind: axis = 1; sign = -1.0; break;
        case SpecifierKind::Above: axis = 2; sign = 1.0; break;
        default: axis = 2; sign = -1.0; break;  // Below
    }
    double gap = s.by ? eval_number(*s.by, ctx) : 0.0;
    double self_half = axis_component(obj.dims, axis) / 2.0;

    Value target = evaluate(*s.arg, ctx);
    Vec3 pos;
    Orientation po;
    if (target.is_object()) {
        const SceneObject& x = deref_object(target, ctx);
        double target_half = axis_component(x.dims, axis) / 2.0;
        Vec3 off = axis_vec(axis, sign * (self_half + target_half + gap));
        po = x.orientation();
        pos = x.position + po.apply(off);
    } else {
        // vector target: offset along the global axis by our own half-extent
        pos = target.as_vec() + axis_vec(axis, sign * (self_half + gap));
        po = Orientation::identity();
    }
    if (owns(act, "position")) obj.position = pos;
    if (owns(act, "parentOrientation")) obj.parent_orientation = po;
}

// Surface to place things on: a surface region as-is, the top surface of a
// box/volume region, or an object's top surface (overridable through its
// `topSurface` property).
Region on_region(const Value& v, EvalContext& ctx) {
    if (v.is_region()) {
        const Region& r = v.as_region();
        if (r.kind() == Region::Kind::Surface) return r;
        return r.top_surface();
    }
    if (v.is_object()) {
        const SceneObject& x = deref_object(v, ctx);
        auto it = x.extras.find("topSurface");
        if (it != x.extras.end()) return it->second.as_region();
        return Region::surface(x.collision().mesh).top_surface();
    }
    throw EvalError(std::string("'on' requires a region or an object, got ") + v.type_name());
}

void apply_on(SceneObject& obj, const PlanAction& act, EvalContext& ctx) {
    Region region = on_region(evaluate(*act.spec->arg, ctx), ctx);
    if (act.type == PlanAction::Type::Apply) {
        // `on` is the position producer: sample the surface uniformly by area
        SurfacePoint sp = region.sample_surface(need_rng(ctx));
        if (owns(act, "parentOrientation"))
            obj.parent_orientation = Orientation::rotation_between({0, 0, 1}, sp.normal);
        obj.position = sp.point - obj.orientation().apply(obj.base_offset);
        return;
    }
    // modifying: keep the prior position's footprint, settle onto the surface
    auto sp1 = region.project(obj.position);
    if (!sp1) throw NoProjection("'on' found no surface point below or above the position");
    if (owns(act, "parentOrientation"))
        obj.parent_orientation = Orientation::rotation_between({0, 0, 1}, sp1->normal);
    Orientation orient = obj.orientation();
    Vec3 base = obj.position + orient.apply(obj.base_offset);
    auto sp2 = region.project(base);
    if (!sp2) throw NoProjection("'on' found no surface point below or above the base point");
    obj.position = sp2->point - orient.apply(obj.base_offset);
}

void apply_facing(SceneObject& obj, const PlanAction& act, EvalContext& ctx) {
    Value v = evaluate(*act.spec->arg, ctx);
    double yaw, pitch = 0.0, roll = 0.0;
    if (v.is_number()) {
        yaw = v.as_number();
    } else if (v.is_vec()) {
        const Vec3& a = v.as_vec();
        yaw = a.x;
        pitch = a.y;
        roll = a.z;
    } else {
        throw EvalError("'facing' requires a yaw angle or a (yaw, pitch, roll) tuple");
    }
    if (owns(act, "yaw")) obj.yaw = yaw;
    if (owns(act, "pitch")) obj.pitch = pitch;
    if (owns(act, "roll")) obj.roll = roll;
}

void apply_facing_toward(SceneObject& obj, const PlanAction& act, EvalContext& ctx) {
    Value v = evaluate(*act.spec->arg, ctx);
    Vec3 target = point_of(v, *ctx.scene);
    Vec3 d_local = obj.parent_orientation.inverse().apply(target - obj.position);
    AnglePair ap = angles_toward({0, 0, 0}, d_local);
    if (owns(act, "yaw")) obj.yaw = ap.yaw;
    if (act.spec->kind == SpecifierKind::FacingDirectlyToward && owns(act, "pitch"))
        obj.pitch = ap.pitch;
}

void apply_offset_by(SceneObject& obj, const PlanAction& act, EvalContext& ctx) {
    if (!ctx.scene || ctx.scene->ego < 0)
        throw EvalError("'offset by' requires ego to be set first");
    const SceneObject& e = ctx.scene->objects[static_cast<size_t>(ctx.scene->ego)];
    Orientation po = e.orientation();
    if (owns(act, "position")) obj.position = e.position + po.apply(eval_vec(*act.spec->arg, ctx));
    if (owns(act, "parentOrientation")) obj.parent_orientation = po;
}

void apply_visible_from(SceneObject& obj, const PlanAction& act, EvalContext& ctx) {
    const SceneObject& x = deref_object(evaluate(*act.spec->arg, ctx), ctx);
    Rng& rng = need_rng(ctx);
    Orientation xo = x.orientation();
    double max_el = std::min(x.view_angle_pitch / 2.0, kPi / 2.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
        double az = rng.range(-x.view_angle_yaw / 2.0, x.view_angle_yaw / 2.0);
        double el = rng.range(-max_el, max_el);
        double dist = rng.range(0.0, x.visible_distance);
        double c = std::cos(el);
        Vec3 dir = xo.apply({-std::sin(az) * c, std::cos(az) * c, std::sin(el)});
        bool blocked = false;
        for (const SceneObject& other : ctx.scene->objects) {
            if (&other == &x) continue;
            if (other.collision().bvh->raycast(x.position, dir, 1e-9, dist - 1e-9)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            obj.position = x.position + dir * dist;
            return;
        }
    }
    throw EmptyRegionError("found no position visible from '" + x.name + "'");
}

void apply_specifier(SceneObject& obj, const PlanAction& act, EvalContext& ctx) {
    switch (act.spec->kind) {
        case SpecifierKind::At: obj.position = eval_vec(*act.spec->arg, ctx); return;
        case SpecifierKind::OffsetBy: apply_offset_by(obj, act, ctx); return;
        case SpecifierKind::LeftOf:
        case SpecifierKind::RightOf:
        case SpecifierKind::AheadOf:
        case SpecifierKind::Behind:
        case SpecifierKind::Above:
        case SpecifierKind::Below: apply_directional(obj, act, ctx); return;
        case SpecifierKind::On: apply_on(obj, act, ctx); return;
        case SpecifierKind::Facing: apply_facing(obj, act, ctx); return;
        case SpecifierKind::FacingToward:
        case SpecifierKind::FacingDirectlyToward: apply_facing_toward(obj, act, ctx); return;
        case SpecifierKind::With:
            assign_property(obj, act.spec->prop, evaluate(*act.spec->arg, ctx));
            return;
        case SpecifierKind::VisibleFrom: apply_visible_from(obj, act, ctx); return;
    }
}

}  // namespace

SceneObject build_object(const std::string& kind_name, const std::string& name,
                         const std::vector<Specifier>& specs, const KindTable& kinds,
                         EvalContext& ctx) {
    std::map<std::string, const Expr*> kind_defaults;
    for (const auto& [prop, expr] : kinds.chain(kind_name)) kind_defaults[prop] = expr;

    std::vector<std::string> extra_props;
    for (const auto& [prop, expr] : kind_defaults)
        if (builtin_index(prop) < 0) extra_props.push_back(prop);

    SpecifierPlan plan = resolve_specifiers(specs, extra_props);

    SceneObject obj;
    obj.kind = kind_name;
    obj.name = name;
    obj.ray_density = ctx.default_ray_density;

    for (const PlanAction& act : plan.actions) {
        if (act.type == PlanAction::Type::Default) {
            auto it = kind_defaults.find(act.prop);
            if (it != kind_defaults.end())
                assign_property(obj, act.prop, evaluate(*it->second, ctx));
            else if (act.prop == "baseOffset")
                obj.base_offset = {0.0, 0.0, -obj.dims.z / 2.0};
            // otherwise the constructed defaults already apply
        } else {
            apply_specifier(obj, act, ctx);
        }
    }
    return obj;
}

}  // namespace scenium
