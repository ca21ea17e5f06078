#pragma once

#include <map>
#include <string>
#include <vector>

#include "scenium/scene.hpp"
#include "scenium/simulate.hpp"

namespace scenium {

// Scene document as JSON (deterministic layout, numbers with 17 significant
// digits so byte-identical output implies identical scenes).
std::string scene_to_json(const Scene& scene);

// Simulation trace as JSON Lines: one {"t", "objects", "signals"} per step.
std::string trace_to_jsonl(const SimResult& sim, const Scene& scene);

// Wavefront OBJ of every object's world-space mesh, one `o <name>` group
// per object.
std::string scene_to_obj(const Scene& scene);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Trace-state file for offline monitoring: each non-empty line is one step
// of whitespace-separated `atom=0` / `atom=1` assignments; `#` comments.
std::vector<std::map<std::string, bool>> parse_trace_states(const std::string& text);

}  // namespace scenium
