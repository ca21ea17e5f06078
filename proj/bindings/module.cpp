#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "scenium/errors.hpp"
#include "scenium/parser.hpp"
#include "scenium/sampler.hpp"
#include "scenium/scene_io.hpp"
#include "scenium/simulate.hpp"
#include "scenium/temporal.hpp"

namespace py = pybind11;
using namespace scenium;

namespace {

Scenario compile_source(const std::string& source) {
    auto program = std::make_shared<Program>(parse_program(source));
    return compile_scenario(std::move(program));
}

std::string py_check(const std::string& source) {
    auto program = std::make_shared<Program>(parse_program(source));
    compile_scenario(program);
    return dump(*program);
}

std::vector<std::string> py_sample(const std::string& source, std::uint64_t seed, int count,
                                   int max_rejections, double ray_density, bool heuristics) {
    Scenario sc = compile_source(source);
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) {
        SamplerConfig cfg;
        cfg.seed = seed + static_cast<std::uint64_t>(i);
        cfg.max_rejections = max_rejections;
        cfg.ray_density = ray_density;
        cfg.heuristics = heuristics;
        out.push_back(scene_to_json(sample_scene(sc, cfg)));
    }
    return out;
}

py::list py_simulate(const std::string& source, std::uint64_t seed, int runs, int steps,
                     double dt, int max_rejections, bool coverage, bool heuristics) {
    Scenario sc = compile_source(source);
    py::list out;
    for (int r = 0; r < runs; ++r) {
        SamplerConfig scfg;
        scfg.seed = seed + static_cast<std::uint64_t>(r);
        scfg.max_rejections = max_rejections;
        scfg.heuristics = heuristics;
        SimConfig simcfg;
        simcfg.steps = steps;
        simcfg.dt = dt;
        simcfg.coverage = coverage;
        simcfg.heuristics = heuristics;
        RunResult run = simulate_with_resampling(sc, scfg, simcfg);

        py::dict d;
        d["rejections"] = run.rejections;
        d["scene"] = scene_to_json(run.scene);
        d["trace_jsonl"] = trace_to_jsonl(run.sim, run.scene);
        py::list verdicts;
        for (const MonitorResult& m : run.sim.monitors) {
            py::dict v;
            v["line"] = m.line;
            v["formula"] = m.formula;
            v["verdict"] = verdict_name(m.verdict);
            verdicts.append(v);
        }
        d["verdicts"] = verdicts;
        d["coverage"] = run.sim.coverage;
        out.append(d);
    }
    return out;
}

std::string py_check_trace(const std::string& trace_text, const std::string& formula) {
    auto states = parse_trace_states(trace_text);
    ExprPtr parsed = parse_expression(formula);
    AtomTable atoms;
    Formula f = formula_from_expr(*parsed, atoms);
    Monitor monitor(f);
    for (const auto& state : states) {
        std::vector<bool> values;
        for (const std::string& name : atoms.names) {
            auto it = state.find(name);
            if (it == state.end()) throw EvalError("atom '" + name + "' missing from trace step");
            values.push_back(it->second);
        }
        monitor.step(values);
    }
    return verdict_name(monitor.finalize());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "scenium: scenario description language toolkit";
    m.attr("__version__") = "0.1.0";

    m.def("check", &py_check, py::arg("source"),
          "Parse and validate a scenario; returns the syntax tree dump.");
    m.def("sample", &py_sample, py::arg("source"), py::arg("seed") = 0, py::arg("count") = 1,
          py::arg("max_rejections") = 1000, py::arg("ray_density") = 1.0,
          py::arg("heuristics") = true,
          "Sample static scenes; returns one JSON document per scene.");
    m.def("simulate", &py_simulate, py::arg("source"), py::arg("seed") = 0, py::arg("runs") = 1,
          py::arg("steps") = 300, py::arg("dt") = 0.1, py::arg("max_rejections") = 1000,
          py::arg("coverage") = false, py::arg("heuristics") = true,
          "Sample and simulate; returns one dict per run.");
    m.def("check_trace", &py_check_trace, py::arg("trace"), py::arg("formula"),
          "Monitor a temporal formula over a name=0/1 trace; returns the verdict.");
}
