#include "scenium/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "scenium/collision.hpp"
#include "scenium/errors.hpp"
#include "scenium/evaluator.hpp"
#include "scenium/rng.hpp"

namespace scenium {

namespace {

// Grid over the floor's footprint tracking which cells the vacuum's disc has
// swept.  Obstacles are fixed at simulation start: any other object whose
// bounds intrude into the vacuum's height band above the floor blocks the
// cells under its footprint.
struct CoverageGrid {
    double cell = 0.05;
    double x0 = 0.0, y0 = 0.0;
    int nx = 0, ny = 0;
    std::vector<char> free_cell;
    std::vector<char> cleaned;
    int free_count = 0;
    int cleaned_count = 0;
    int vacuum = -1;

    void init(const Scene& scene, int vacuum_idx, int floor_idx, double cell_size) {
        cell = cell_size;
        vacuum = vacuum_idx;
        const Aabb floor_box = scene.object(floor_idx).collision().bounds;
        const SceneObject& vac = scene.object(vacuum_idx);
        double floor_top = floor_box.hi.z;
        double band_lo = floor_top + 1e-6;
        double band_hi = floor_top + vac.dims.z - 1e-6;

        x0 = floor_box.lo.x;
        y0 = floor_box.lo.y;
        nx = std::max(1, static_cast<int>(std::floor((floor_box.hi.x - x0) / cell)));
        ny = std::max(1, static_cast<int>(std::floor((floor_box.hi.y - y0) / cell)));
        free_cell.assign(static_cast<size_t>(nx) * ny, 1);
        cleaned.assign(static_cast<size_t>(nx) * ny, 0);

        for (size_t i = 0; i < scene.objects.size(); ++i) {
            if (static_cast<int>(i) == vacuum_idx || static_cast<int>(i) == floor_idx) continue;
            const Aabb& b = scene.objects[i].collision().bounds;
            if (b.lo.z >= band_hi || b.hi.z <= band_lo) continue;
            int ix0 = std::max(0, static_cast<int>(std::floor((b.lo.x - x0) / cell - 0.5)));
            int ix1 = std::min(nx - 1, static_cast<int>(std::ceil((b.hi.x - x0) / cell - 0.5)));
            int iy0 = std::max(0, static_cast<int>(std::floor((b.lo.y - y0) / cell - 0.5)));
            int iy1 = std::min(ny - 1, static_cast<int>(std::ceil((b.hi.y - y0) / cell - 0.5)));
            for (int iy = iy0; iy <= iy1; ++iy) {
                for (int ix = ix0; ix <= ix1; ++ix) {
                    double cx = x0 + (ix + 0.5) * cell, cy = y0 + (iy + 0.5) * cell;
                    if (cx >= b.lo.x && cx <= b.hi.x && cy >= b.lo.y && cy <= b.hi.y)
                        free_cell[static_cast<size_t>(iy) * nx + ix] = 0;
                }
            }
        }
        for (char f : free_cell) free_count += f;
    }

    void sweep(const Scene& scene) {
        const SceneObject& vac = scene.object(vacuum);
        double r = vac.dims.x / 2.0;
        double r2 = r * r;
        int ix0 = std::max(0, static_cast<int>(std::floor((vac.position.x - r - x0) / cell)));
        int ix1 = std::min(nx - 1, static_cast<int>(std::ceil((vac.position.x + r - x0) / cell)));
        int iy0 = std::max(0, static_cast<int>(std::floor((vac.position.y - r - y0) / cell)));
        int iy1 = std::min(ny - 1, static_cast<int>(std::ceil((vac.position.y + r - y0) / cell)));
        for (int iy = iy0; iy <= iy1; ++iy) {
            for (int ix = ix0; ix <= ix1; ++ix) {
                size_t k = static_cast<size_t>(iy) * nx + ix;
                if (!free_cell[k] || cleaned[k]) continue;
                double dx = x0 + (ix + 0.5) * cell - vac.position.x;
                double dy = y0 + (iy + 0.5) * cell - vac.position.y;
                if (dx * dx + dy * dy <= r2) {
                    cleaned[k] = 1;
                    ++cleaned_count;
                }
            }
        }
    }

    double fraction() const {
        return free_count > 0 ? static_cast<double>(cleaned_count) / free_count : 0.0;
    }
};

bool collides_with_any(const Scene& scene, size_t idx, bool heuristics) {
    const SceneObject& o = scene.objects[idx];
    if (o.allow_collisions) return false;
    for (size_t j = 0; j < scene.objects.size(); ++j) {
        if (j == idx || scene.objects[j].allow_collisions) continue;
        if (meshes_intersect(o.collision(), scene.objects[j].collision(), heuristics))
            return true;
    }
    return false;
}

ObjectState state_of(const SceneObject& o) {
    // world orientation, matching the scene serialization
    double yaw, pitch, roll;
    o.orientation().euler_angles(yaw, pitch, roll);
    return {o.position, yaw, pitch, roll};
}

}  // namespace

SimResult simulate_scene(Scene scene, const Scenario& sc, const SimConfig& cfg) {
    SimResult out;

    // Monitors share one atom table so equal propositions are evaluated once.
    AtomTable atoms;
    std::vector<Monitor> monitors;
    for (const Statement* r : sc.temporal_requires) {
        Formula f = formula_from_expr(*r->value, atoms);
        monitors.emplace_back(f);
        out.monitors.push_back({r->span.line, formula_to_string(f), Verdict::PresumablyTrue});
    }

    // Per-object motion state.
    Rng sim_rng(mix_seed(cfg.sim_seed, 0xd15c0ULL));
    std::vector<Rng> walk_rng;
    std::vector<double> heading(scene.objects.size(), 0.0);
    std::vector<size_t> next_waypoint(scene.objects.size(), 0);
    for (size_t i = 0; i < scene.objects.size(); ++i) {
        walk_rng.push_back(sim_rng.fork(i));
        heading[i] = scene.objects[i].yaw;
    }

    CoverageGrid grid;
    if (cfg.coverage) {
        int vac = -1, floor_idx = -1;
        for (size_t i = 0; i < scene.objects.size(); ++i) {
            if (vac < 0 && scene.objects[i].kind == "Vacuum") vac = static_cast<int>(i);
            if (floor_idx < 0 && scene.objects[i].name == "floor") floor_idx = static_cast<int>(i);
        }
        if (vac < 0 || floor_idx < 0)
            throw EvalError("coverage needs a Vacuum object and an object named 'floor'");
        grid.init(scene, vac, floor_idx, cfg.coverage_cell);
    }

    EvalContext ctx{&scene, nullptr, cfg.heuristics, 1.0};

    auto record = [&](int step) -> bool {
        TraceStep ts;
        ts.t = step * cfg.dt;
        for (const SceneObject& o : scene.objects) ts.objects.push_back(state_of(o));
        if (cfg.coverage) {
            grid.sweep(scene);
            double frac = grid.fraction();
            ts.signals["coverage"] = frac;
            out.coverage.push_back(frac);
        }
        out.trace.push_back(std::move(ts));

        std::vector<bool> values;
        values.reserve(atoms.exprs.size());
        for (const Expr* e : atoms.exprs) values.push_back(eval_bool(*e, ctx));
        out.atom_history.push_back(values);
        bool abort = false;
        for (size_t m = 0; m < monitors.size(); ++m) {
            monitors[m].step(values);
            if (auto v = monitors[m].definite(); v && *v == Verdict::False) {
                out.violated = true;
                out.violated_step = step;
                abort = true;
            }
        }
        return abort;
    };

    bool aborted = record(0);
    for (int step = 1; step <= cfg.steps && !aborted; ++step) {
        for (size_t i = 0; i < scene.objects.size(); ++i) {
            SceneObject& o = scene.objects[i];
            Vec3 prev = o.position;
            double prev_yaw = o.yaw;
            switch (o.behavior.kind) {
                case BehaviorSpec::Kind::Stationary: continue;
                case BehaviorSpec::Kind::ConstantVelocity:
                    o.position += o.behavior.velocity * cfg.dt;
                    break;
                case BehaviorSpec::Kind::Waypoints: {
                    if (next_waypoint[i] >= o.behavior.waypoints.size()) continue;
                    Vec3 target = o.behavior.waypoints[next_waypoint[i]];
                    Vec3 d = target - o.position;
                    double dist = d.norm();
                    double advance = o.behavior.speed * cfg.dt;
                    if (dist <= advance) {
                        o.position = target;
                        ++next_waypoint[i];
                    } else {
                        o.position += d * (advance / dist);
                        if (std::hypot(d.x, d.y) > 1e-9)
                            o.yaw = angles_toward(prev, target).yaw;
                    }
                    break;
                }
                case BehaviorSpec::Kind::RandomWalk: {
                    heading[i] += walk_rng[i].range(-1.0, 1.0) * o.behavior.turn_rate * cfg.dt;
                    double h = heading[i];
                    o.position += Vec3{-std::sin(h), std::cos(h), 0.0} * (o.behavior.speed * cfg.dt);
                    o.yaw = h;
                    break;
                }
            }
            if (collides_with_any(scene, i, cfg.heuristics)) {
                o.position = prev;
                o.yaw = prev_yaw;
                if (o.behavior.kind == BehaviorSpec::Kind::RandomWalk)
                    heading[i] = walk_rng[i].range(-kPi, kPi);
            }
        }
        aborted = record(step);
    }

    for (size_t m = 0; m < monitors.size(); ++m)
        out.monitors[m].verdict = monitors[m].finalize();
    for (const std::string& n : atoms.names) out.atom_names.push_back(n);
    return out;
}

RunResult simulate_with_resampling(const Scenario& sc, const SamplerConfig& sampler,
                                   const SimConfig& sim) {
    int budget = sampler.max_rejections;
    int spent = 0;
    for (std::uint64_t t = 0;; ++t) {
        SamplerConfig c = sampler;
        c.seed = (t == 0) ? sampler.seed : mix_seed(sampler.seed, 0xabc0ULL + t);
        c.max_rejections = budget - spent;
        SampleStats stats;
        Scene scene = sample_scene(sc, c, &stats);
        spent += stats.rejections;

        SimConfig s = sim;
        s.sim_seed = mix_seed(c.seed, 0x51edULL);
        SimResult result = simulate_scene(scene, sc, s);
        if (!result.violated) {
            return RunResult{std::move(scene), std::move(result), spent};
        }
        if (++spent > budget)
            throw MaxRejectionsExceeded(
                "sampling failed after " + std::to_string(spent) +
                    " rejections; most frequent cause: temporal requirement",
                "temporal requirement");
    }
}

}  // namespace scenium
