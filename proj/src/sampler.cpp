#include "scenium/sampler.hpp"

#include <algorithm>
#include <set>

#include "scenium/collision.hpp"
#include "scenium/errors.hpp"
#include "scenium/evaluator.hpp"
#include "scenium/rng.hpp"
#include "scenium/specifiers.hpp"

namespace scenium {

namespace {

const std::set<std::string>& builtin_functions() {
    static const std::set<std::string> fns = {
        "Range",      "Normal",           "Uniform",   "BoxRegion",  "AllRegion",
        "Stationary", "ConstantVelocity", "Waypoints", "RandomWalk",
    };
    return fns;
}

[[noreturn]] void fail_at(const Span& span, const std::string& msg) {
    throw EvalError(msg + " (line " + std::to_string(span.line) + ")");
}

struct Checker {
    const KindTable* kinds;
    std::set<std::string> defined;

    void expr(const Expr& e, bool allow_temporal, bool allow_new) {
        switch (e.kind) {
            case ExprKind::Name:
                if (!defined.count(e.text)) fail_at(e.span, "'" + e.text + "' is not defined");
                return;
            case ExprKind::New: {
                if (!allow_new)
                    fail_at(e.span, "object construction is not allowed in this context");
                if (!kinds->has(e.text)) fail_at(e.span, "unknown kind '" + e.text + "'");
                resolve_specifiers(e.specifiers);  // conflicts and cycles
                for (const Specifier& s : e.specifiers) {
                    if (s.arg) expr(*s.arg, false, false);
                    if (s.by) expr(*s.by, false, false);
                }
                return;
            }
            case ExprKind::Call:
                if (!builtin_functions().count(e.text))
                    fail_at(e.span, "unknown function '" + e.text + "'");
                break;
            case ExprKind::Always:
            case ExprKind::Eventually:
            case ExprKind::Next:
            case ExprKind::Until:
                if (!allow_temporal)
                    fail_at(e.span, "temporal operators are only allowed in requirements");
                break;
            default: break;
        }
        for (const auto& c : e.children) expr(*c, allow_temporal, allow_new);
    }
};

}  // namespace

Scenario compile_scenario(std::shared_ptr<Program> program) {
    Scenario sc;
    sc.program = std::move(program);
    sc.kinds.register_kinds(*sc.program);

    Checker chk{&sc.kinds, {}};
    for (const Statement& stmt : sc.program->statements) {
        switch (stmt.kind) {
            case StmtKind::Assignment:
                chk.expr(*stmt.value, false, true);
                chk.defined.insert(stmt.name);
                break;
            case StmtKind::EgoAssignment:
                chk.expr(*stmt.value, false, true);
                chk.defined.insert("ego");
                break;
            case StmtKind::NewStmt:
                chk.expr(*stmt.value, false, true);
                break;
            case StmtKind::Require:
                chk.expr(*stmt.value, true, false);
                if (contains_temporal(*stmt.value))
                    sc.temporal_requires.push_back(&stmt);
                else
                    sc.static_requires.push_back(&stmt);
                break;
            case StmtKind::Mutate:
                for (const std::string& t : stmt.targets)
                    if (!chk.defined.count(t)) fail_at(stmt.span, "'" + t + "' is not defined");
                if (stmt.value) chk.expr(*stmt.value, false, false);
                sc.mutates.push_back(&stmt);
                break;
            case StmtKind::KindDef:
                // kind registration already validated names; defaults are
                // evaluated in the constructing scene's scope, so only check
                // structure here
                for (const PropertyDefault& d : stmt.defaults) {
                    Checker inner{&sc.kinds, chk.defined};
                    inner.expr(*d.value, false, false);
                }
                break;
        }
    }
    return sc;
}

namespace {

void build_from_new(Scene& scene, const Expr& ne, const std::string& name, const Scenario& sc,
                    EvalContext& ctx) {
    std::string obj_name = name;
    if (obj_name.empty())
        obj_name = ne.text + "_" + std::to_string(scene.objects.size() + 1);
    SceneObject obj = build_object(ne.text, obj_name, ne.specifiers, sc.kinds, ctx);
    scene.objects.push_back(std::move(obj));
    if (!name.empty())
        scene.globals[name] = Value(ObjectRef{static_cast<int>(scene.objects.size()) - 1});
}

// One construction attempt; throws rejection-class errors on bad placements.
Scene build_attempt(const Scenario& sc, Rng& rng, const SamplerConfig& cfg) {
    Scene scene;
    scene.seed = cfg.seed;
    EvalContext ctx{&scene, &rng, cfg.heuristics, cfg.ray_density};

    for (const Statement& stmt : sc.program->statements) {
        switch (stmt.kind) {
            case StmtKind::Assignment:
                if (stmt.value->kind == ExprKind::New)
                    build_from_new(scene, *stmt.value, stmt.name, sc, ctx);
                else
                    scene.globals[stmt.name] = evaluate(*stmt.value, ctx);
                break;
            case StmtKind::EgoAssignment: {
                if (stmt.value->kind == ExprKind::New) {
                    build_from_new(scene, *stmt.value, "ego", sc, ctx);
                    scene.ego = static_cast<int>(scene.objects.size()) - 1;
                    scene.globals["ego"] = Value(ObjectRef{scene.ego});
                } else {
                    Value v = evaluate(*stmt.value, ctx);
                    scene.ego = v.as_object().index;
                    scene.globals["ego"] = v;
                }
                break;
            }
            case StmtKind::NewStmt:
                build_from_new(scene, *stmt.value, "", sc, ctx);
                break;
            default: break;  // require / mutate / kind handled elsewhere
        }
    }

    // mutation noise, before any acceptance checks
    for (const Statement* m : sc.mutates) {
        double scale = m->value ? eval_number(*m->value, ctx) : 1.0;
        std::vector<int> targets;
        if (m->targets.empty()) {
            for (size_t i = 0; i < scene.objects.size(); ++i)
                targets.push_back(static_cast<int>(i));
        } else {
            for (const std::string& t : m->targets) {
                auto it = scene.globals.find(t);
                if (it == scene.globals.end()) fail_at(m->span, "'" + t + "' is not defined");
                targets.push_back(it->second.as_object().index);
            }
        }
        for (int idx : targets) {
            SceneObject& o = scene.object(idx);
            o.position.x += rng.normal(0.0, 0.5 * scale);
            o.position.y += rng.normal(0.0, 0.5 * scale);
            o.yaw += rng.normal(0.0, deg2rad(5.0) * scale);
        }
    }
    return scene;
}

// Returns a short rejection cause, or empty when the scene is acceptable.
std::string acceptance_failure(Scene& scene, const Scenario& sc, const SamplerConfig& cfg) {
    for (size_t i = 0; i < scene.objects.size(); ++i) {
        for (size_t j = i + 1; j < scene.objects.size(); ++j) {
            const SceneObject& a = scene.objects[i];
            const SceneObject& b = scene.objects[j];
            if (a.allow_collisions || b.allow_collisions) continue;
            if (meshes_intersect(a.collision(), b.collision(), cfg.heuristics))
                return "collision";
        }
    }

    EvalContext ctx{&scene, nullptr, cfg.heuristics, cfg.ray_density};
    for (const Statement* r : sc.static_requires) {
        if (!eval_bool(*r->value, ctx))
            return "requirement at line " + std::to_string(r->span.line);
    }

    auto ws = scene.globals.find("workspace");
    if (ws != scene.globals.end() && ws->second.is_region()) {
        const Region& region = ws->second.as_region();
        for (const SceneObject& o : scene.objects)
            for (const Vec3& v : o.collision().mesh.vertices)
                if (!region.contains(v)) return "workspace";
    }
    return "";
}

}  // namespace

Scene sample_scene(const Scenario& sc, const SamplerConfig& cfg, SampleStats* stats) {
    std::map<std::string, int> causes;
    for (int attempt = 0; attempt <= cfg.max_rejections; ++attempt) {
        Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(attempt)));
        std::string cause;
        try {
            Scene scene = build_attempt(sc, rng, cfg);
            cause = acceptance_failure(scene, sc, cfg);
            if (cause.empty()) {
                scene.rejections = attempt;
                if (stats) {
                    stats->rejections = attempt;
                    stats->causes = causes;
                }
                return scene;
            }
        } catch (const NoProjection&) {
            cause = "no projection";
        } catch (const DegenerateDirection&) {
            cause = "degenerate direction";
        } catch (const EmptyRegionError&) {
            cause = "empty region";
        }
        ++causes[cause];
    }

    std::string top;
    int top_count = 0;
    for (const auto& [cause, count] : causes) {
        if (count > top_count) {
            top = cause;
            top_count = count;
        }
    }
    throw MaxRejectionsExceeded("sampling failed after " + std::to_string(cfg.max_rejections + 1) +
                                    " attempts; most frequent cause: " + top,
                                top);
}

}  // namespace scenium
