#pragma once

#include <map>
#include <string>
#include <vector>

#include "scenium/sampler.hpp"
#include "scenium/scene.hpp"
#include "scenium/temporal.hpp"

namespace scenium {

struct SimConfig {
    int steps = 300;
    double dt = 0.1;
    bool heuristics = true;
    std::uint64_t sim_seed = 0;  // behavior noise stream (RandomWalk headings)
    bool coverage = false;       // compute the cleaned-floor fraction signal
    double coverage_cell = 0.05;
};

// One object's pose at one step.
struct ObjectState {
    Vec3 position;
    double yaw = 0.0, pitch = 0.0, roll = 0.0;
};

struct TraceStep {
    double t = 0.0;
    std::vector<ObjectState> objects;
    std::map<std::string, double> signals;
};

struct MonitorResult {
    int line = 0;           // source line of the requirement
    std::string formula;    // rendered temporal formula
    Verdict verdict = Verdict::PresumablyTrue;
};

struct SimResult {
    std::vector<TraceStep> trace;  // entry 0 is the initial scene
    std::vector<MonitorResult> monitors;
    std::vector<std::string> atom_names;
    std::vector<std::vector<bool>> atom_history;  // per step, per atom
    bool violated = false;   // a monitor reached a definitive FALSE
    int violated_step = -1;
    std::vector<double> coverage;  // per step, when enabled
};

// Forward-Euler kinematics over the scene's behaviors with collide-and-stop
// response, progressing one monitor per temporal requirement each step and
// aborting early on a definitive violation.  The trace has steps+1 entries
// (the initial scene plus one per step) unless aborted.
SimResult simulate_scene(Scene scene, const Scenario& sc, const SimConfig& cfg);

// Samples scenes until one satisfies every temporal requirement (sharing the
// sampler's rejection budget with static rejections) and returns its
// simulation.  The first sampling attempt uses cfg.seed itself, so run
// results are reproducible from the seed alone.
struct RunResult {
    Scene scene;
    SimResult sim;
    int rejections = 0;  // static + temporal rejections spent
};
RunResult simulate_with_resampling(const Scenario& sc, const SamplerConfig& sampler,
                                   const SimConfig& sim);

}  // namespace scenium
