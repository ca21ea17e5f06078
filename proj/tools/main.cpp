#include <atomic>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "scenium/diagnostics.hpp"
#include "scenium/errors.hpp"
#include "scenium/parser.hpp"
#include "scenium/sampler.hpp"
#include "scenium/scene_io.hpp"
#include "scenium/simulate.hpp"
#include "scenium/temporal.hpp"

using namespace scenium;

namespace {

// exit codes: 0 ok, 1 program error, 2 sampling exhausted, 3 i/o error
constexpr int kOk = 0, kProgramError = 1, kExhausted = 2, kIoError = 3;

struct Loaded {
    std::string source;
    std::string filename;
    Scenario scenario;
};

Loaded load_scenario(const std::string& path) {
    Loaded l;
    l.filename = path;
    l.source = read_file(path);
    auto program = std::make_shared<Program>(parse_program(l.source));
    l.scenario = compile_scenario(std::move(program));
    return l;
}

int run_guarded(const std::string& source, const std::string& filename,
                const std::function<int()>& body) {
    try {
        return body();
    } catch (const LexError& e) {
        std::fputs(format_diagnostic(source, filename, e.line, e.column, e.what()).c_str(),
                   stderr);
        return kProgramError;
    } catch (const ParseError& e) {
        std::fputs(format_diagnostic(source, filename, e.line, e.column, e.what()).c_str(),
                   stderr);
        return kProgramError;
    } catch (const MaxRejectionsExceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExhausted;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIoError;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kProgramError;
    }
}

// Runs fn(i) for i in [0, count) on up to jobs threads; results are
// collected per index so output order never depends on scheduling.
template <typename Fn>
void parallel_indexed(int count, int jobs, Fn fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next++; i < count; i = next++) fn(i);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scenium: scenario description language toolkit"};
    app.require_subcommand(1);

    std::string file, out_dir, format = "json", formula, trace_out;
    std::uint64_t seed = 0;
    int count = 1, runs = 1, steps = 300, max_rejections = 1000, jobs = 1;
    double dt = 0.1, ray_density = 1.0;
    bool no_heuristics = false, dump_ast = false, coverage = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "scenario file")->required();
        cmd->add_option("--seed", seed, "base random seed");
        cmd->add_option("--max-rejections", max_rejections, "rejection budget per scene");
        cmd->add_option("--ray-density", ray_density, "visibility rays per degree")
            ->envname("SCENIUM_RAY_DENSITY");
        cmd->add_flag("--no-heuristics", no_heuristics,
                      "disable fast geometry paths (reference mode)");
        cmd->add_option("--jobs", jobs, "worker threads");
    };

    CLI::App* check = app.add_subcommand("check", "parse and validate a scenario");
    check->add_option("file", file, "scenario file")->required();
    check->add_flag("--dump-ast", dump_ast, "print the syntax tree");

    CLI::App* sample = app.add_subcommand("sample", "sample static scenes");
    add_common(sample);
    sample->add_option("--count", count, "number of scenes (scene i uses seed+i)");
    sample->add_option("--out-dir", out_dir, "write scene_<i>.<ext> files here");
    sample->add_option("--format", format, "json or obj")
        ->check(CLI::IsMember({"json", "obj"}));

    CLI::App* simulate = app.add_subcommand("simulate", "sample and simulate scenes");
    add_common(simulate);
    simulate->add_option("--runs", runs, "number of runs (run r uses seed+r)");
    simulate->add_option("--steps", steps, "simulation steps (trace has steps+1 entries)");
    simulate->add_option("--dt", dt, "seconds per step");
    simulate->add_flag("--coverage", coverage, "track cleaned-floor coverage signal");
    simulate->add_option("--trace-out", trace_out, "write run_<r>.jsonl traces here");

    CLI::App* check_trace = app.add_subcommand("check-trace", "monitor a formula over a trace");
    check_trace->add_option("file", file, "trace file of name=0/1 lines")->required();
    check_trace->add_option("--formula", formula, "temporal formula over the atom names")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) {
        std::string source;
        try {
            source = read_file(file);
        } catch (const IoError& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kIoError;
        }
        return run_guarded(source, file, [&] {
            auto program = std::make_shared<Program>(parse_program(source));
            compile_scenario(program);
            if (dump_ast)
                std::fputs(dump(*program).c_str(), stdout);
            else
                std::printf("%s: ok\n", file.c_str());
            return kOk;
        });
    }

    if (check_trace->parsed()) {
        std::string formula_src;
        try {
            formula_src = read_file(formula);
        } catch (const IoError& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kIoError;
        }
        return run_guarded(formula_src, formula, [&] {
            auto states = parse_trace_states(read_file(file));
            ExprPtr parsed = parse_expression(formula_src);
            AtomTable atoms;
            Formula f = formula_from_expr(*parsed, atoms);
            Monitor monitor(f);
            for (const auto& state : states) {
                std::vector<bool> values;
                for (const std::string& name : atoms.names) {
                    auto it = state.find(name);
                    if (it == state.end())
                        throw EvalError("atom '" + name + "' missing from trace step");
                    values.push_back(it->second);
                }
                monitor.step(values);
            }
            std::printf("%s\n", verdict_name(monitor.finalize()));
            return kOk;
        });
    }

    std::string source;
    Loaded loaded;
    try {
        loaded = load_scenario(file);
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIoError;
    } catch (const LexError& e) {
        std::fputs(
            format_diagnostic(read_file(file), file, e.line, e.column, e.what()).c_str(),
            stderr);
        return kProgramError;
    } catch (const ParseError& e) {
        std::fputs(
            format_diagnostic(read_file(file), file, e.line, e.column, e.what()).c_str(),
            stderr);
        return kProgramError;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kProgramError;
    }

    if (sample->parsed()) {
        return run_guarded(loaded.source, file, [&] {
            std::vector<std::string> rendered(static_cast<size_t>(count));
            parallel_indexed(count, jobs, [&](int i) {
                SamplerConfig cfg;
                cfg.seed = seed + static_cast<std::uint64_t>(i);
                cfg.max_rejections = max_rejections;
                cfg.ray_density = ray_density;
                cfg.heuristics = !no_heuristics;
                Scene scene = sample_scene(loaded.scenario, cfg);
                rendered[static_cast<size_t>(i)] =
                    format == "obj" ? scene_to_obj(scene) : scene_to_json(scene);
            });
            for (int i = 0; i < count; ++i) {
                if (out_dir.empty()) {
                    std::fputs(rendered[static_cast<size_t>(i)].c_str(), stdout);
                } else {
                    std::string ext = format == "obj" ? ".obj" : ".json";
                    write_file(out_dir + "/scene_" + std::to_string(i) + ext,
                               rendered[static_cast<size_t>(i)]);
                }
            }
            return kOk;
        });
    }

    if (simulate->parsed()) {
        return run_guarded(loaded.source, file, [&] {
            struct RunOutput {
                std::string lines;
                std::string trace;
            };
            std::vector<RunOutput> outputs(static_cast<size_t>(runs));
            parallel_indexed(runs, jobs, [&](int r) {
                SamplerConfig scfg;
                scfg.seed = seed + static_cast<std::uint64_t>(r);
                scfg.max_rejections = max_rejections;
                scfg.ray_density = ray_density;
                scfg.heuristics = !no_heuristics;
                SimConfig simcfg;
                simcfg.steps = steps;
                simcfg.dt = dt;
                simcfg.heuristics = !no_heuristics;
                simcfg.coverage = coverage;
                RunResult run = simulate_with_resampling(loaded.scenario, scfg, simcfg);

                std::string& out = outputs[static_cast<size_t>(r)].lines;
                out += "run " + std::to_string(r) + ": rejections=" +
                       std::to_string(run.rejections) + " steps=" +
                       std::to_string(run.sim.trace.size() - 1) + "\n";
                for (const MonitorResult& m : run.sim.monitors) {
                    out += "  require (line " + std::to_string(m.line) +
                           "): " + verdict_name(m.verdict) + "\n";
                }
                if (coverage && !run.sim.coverage.empty()) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.17g", run.sim.coverage.back());
                    out += "  coverage: " + std::string(buf) + "\n";
                }
                if (!trace_out.empty())
                    outputs[static_cast<size_t>(r)].trace = trace_to_jsonl(run.sim, run.scene);
            });
            for (int r = 0; r < runs; ++r) {
                std::fputs(outputs[static_cast<size_t>(r)].lines.c_str(), stdout);
                if (!trace_out.empty())
                    write_file(trace_out + "/run_" + std::to_string(r) + ".jsonl",
                               outputs[static_cast<size_t>(r)].trace);
            }
            return kOk;
        });
    }

    return kOk;
}
