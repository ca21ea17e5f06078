#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "scenium/ast.hpp"
#include "scenium/scene.hpp"

namespace scenium {

// A validated program ready for sampling: kinds registered, requirements
// split into static (checked per sample) and temporal (monitored during
// simulation), mutation statements gathered.
struct Scenario {
    std::shared_ptr<Program> program;
    KindTable kinds;
    std::vector<const Statement*> static_requires;
    std::vector<const Statement*> temporal_requires;
    std::vector<const Statement*> mutates;
};

// Registers kind definitions and statically validates the program: every
// name defined before use, kinds known, functions known, specifier sets
// free of conflicts and cycles, temporal operators only inside require.
// Throws EvalError / ConflictError / CycleError with line information.
Scenario compile_scenario(std::shared_ptr<Program> program);

struct SamplerConfig {
    std::uint64_t seed = 0;
    int max_rejections = 1000;
    double ray_density = 1.0;  // default rayDensity for objects that do not set it
    bool heuristics = true;    // fast geometry paths (identical results either way)
};

struct SampleStats {
    int rejections = 0;
    std::map<std::string, int> causes;  // rejection cause -> count
};

// Rejection sampling: attempt k derives its generator from
// mix_seed(cfg.seed, k) and rebuilds the scene from scratch; an attempt is
// rejected on placement failures (no projection, degenerate direction,
// empty region), collisions, unsatisfied static requirements, or objects
// escaping the `workspace` region.  Programming errors abort instead.
// Throws MaxRejectionsExceeded when the budget runs out.
Scene sample_scene(const Scenario& sc, const SamplerConfig& cfg, SampleStats* stats = nullptr);

}  // namespace scenium
