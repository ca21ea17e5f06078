#pragma once

// Shared helpers for the unit and acceptance tests.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "scenium/parser.hpp"
#include "scenium/sampler.hpp"
#include "scenium/scene_io.hpp"
#include "scenium/simulate.hpp"

namespace test_util {

inline std::string source_dir() { return SCENIUM_SOURCE_DIR; }

inline std::string corpus_path(const std::string& name) {
    return std::string(SCENIUM_SOURCE_DIR) + "/corpus/" + name;
}

inline scenium::Scenario compile_source(const std::string& src) {
    auto program = std::make_shared<scenium::Program>(scenium::parse_program(src));
    return scenium::compile_scenario(program);
}

inline scenium::Scene sample_source(const std::string& src, std::uint64_t seed = 0,
                                    int max_rejections = 1000, bool heuristics = true) {
    scenium::SamplerConfig cfg;
    cfg.seed = seed;
    cfg.max_rejections = max_rejections;
    cfg.heuristics = heuristics;
    return scenium::sample_scene(compile_source(src), cfg);
}

// Runs a shell command, capturing combined stdout+stderr and the exit code.
struct CmdResult {
    int status = -1;
    std::string output;
};

inline CmdResult run_command(const std::string& cmd) {
    CmdResult r;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int rc = pclose(pipe);
    r.status = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    return r;
}

inline std::string cli_path() { return SCENIUM_CLI_PATH; }

inline std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/scenium_test_" + name;
    scenium::write_file(path, content);
    return path;
}

}  // namespace test_util
