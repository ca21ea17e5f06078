#include "scenium/scene_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scenium/errors.hpp"

namespace scenium {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else if (c == '\t') {
            out += "\\t";
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

std::string vec(const Vec3& v) {
    return "[" + num(v.x) + ", " + num(v.y) + ", " + num(v.z) + "]";
}

std::string behavior_json(const BehaviorSpec& b) {
    std::string out = "{\"kind\": " + quoted(b.name());
    switch (b.kind) {
        case BehaviorSpec::Kind::Stationary: break;
        case BehaviorSpec::Kind::ConstantVelocity:
            out += ", \"velocity\": " + vec(b.velocity);
            break;
        case BehaviorSpec::Kind::Waypoints: {
            out += ", \"speed\": " + num(b.speed) + ", \"points\": [";
            for (size_t i = 0; i < b.waypoints.size(); ++i) {
                if (i) out += ", ";
                out += vec(b.waypoints[i]);
            }
            out += "]";
            break;
        }
        case BehaviorSpec::Kind::RandomWalk:
            out += ", \"speed\": " + num(b.speed) + ", \"turnRate\": " + num(b.turn_rate);
            break;
    }
    return out + "}";
}

// extras keep only plainly serializable values
bool extra_json(const Value& v, std::string& out) {
    if (v.is_number()) {
        out = num(v.as_number());
    } else if (v.is_bool()) {
        out = v.as_bool() ? "true" : "false";
    } else if (v.is_string()) {
        out = quoted(v.as_string());
    } else if (v.is_vec()) {
        out = vec(v.as_vec());
    } else {
        return false;
    }
    return true;
}

std::string object_json(const SceneObject& o) {
    // Angles are the world orientation (parentOrientation composed with the
    // local euler angles) so position + angles fully determine the pose.
    double yaw, pitch, roll;
    o.orientation().euler_angles(yaw, pitch, roll);
    std::string out = "    {\"name\": " + quoted(o.name) + ", \"kind\": " + quoted(o.kind);
    out += ",\n     \"position\": " + vec(o.position);
    out += ", \"yaw\": " + num(yaw) + ", \"pitch\": " + num(pitch) +
           ", \"roll\": " + num(roll);
    out += ",\n     \"dimensions\": " + vec(o.dims) + ", \"shape\": " + quoted(o.shape.name());
    if (o.color) out += ", \"color\": " + vec(*o.color);
    out += ",\n     \"properties\": {";
    out += "\"allowCollisions\": " + std::string(o.allow_collisions ? "true" : "false");
    out += ", \"baseOffset\": " + vec(o.base_offset);
    out += ", \"viewAngles\": [" + num(o.view_angle_yaw) + ", " + num(o.view_angle_pitch) + "]";
    out += ", \"visibleDistance\": " + num(o.visible_distance);
    out += ", \"rayDensity\": " + num(o.ray_density);
    out += ", \"behavior\": " + behavior_json(o.behavior);
    for (const auto& [name, value] : o.extras) {
        std::string rendered;
        if (extra_json(value, rendered)) out += ", " + quoted(name) + ": " + rendered;
    }
    out += "}}";
    return out;
}

}  // namespace

std::string scene_to_json(const Scene& scene) {
    std::string out = "{\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(scene.seed));
    out += "  \"seed\": " + std::string(buf) + ",\n";
    out += "  \"rejections\": " + std::to_string(scene.rejections) + ",\n";
    if (scene.ego >= 0) out += "  \"ego\": " + quoted(scene.object(scene.ego).name) + ",\n";
    out += "  \"objects\": [\n";
    for (size_t i = 0; i < scene.objects.size(); ++i) {
        out += object_json(scene.objects[i]);
        if (i + 1 < scene.objects.size()) out += ",";
        out += "\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::string trace_to_jsonl(const SimResult& sim, const Scene& scene) {
    std::string out;
    for (const TraceStep& ts : sim.trace) {
        out += "{\"t\": " + num(ts.t) + ", \"objects\": [";
        for (size_t i = 0; i < ts.objects.size(); ++i) {
            const ObjectState& s = ts.objects[i];
            if (i) out += ", ";
            out += "{\"name\": " + quoted(scene.objects[i].name);
            out += ", \"position\": " + vec(s.position);
            out += ", \"yaw\": " + num(s.yaw) + ", \"pitch\": " + num(s.pitch) +
                   ", \"roll\": " + num(s.roll) + "}";
        }
        out += "], \"signals\": {";
        bool first = true;
        for (const auto& [name, value] : ts.signals) {
            if (!first) out += ", ";
            first = false;
            out += quoted(name) + ": " + num(value);
        }
        out += "}}\n";
    }
    return out;
}

std::string scene_to_obj(const Scene& scene) {
    std::string out;
    long base = 1;
    for (const SceneObject& o : scene.objects) {
        const TriangleMesh& mesh = o.collision().mesh;
        out += "o " + o.name + "\n";
        for (const Vec3& v : mesh.vertices)
            out += "v " + num(v.x) + " " + num(v.y) + " " + num(v.z) + "\n";
        for (const auto& tri : mesh.triangles) {
            out += "f " + std::to_string(base + tri[0]) + " " + std::to_string(base + tri[1]) +
                   " " + std::to_string(base + tri[2]) + "\n";
        }
        base += static_cast<long>(mesh.vertices.size());
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

std::vector<std::map<std::string, bool>> parse_trace_states(const std::string& text) {
    std::vector<std::map<std::string, bool>> steps;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::map<std::string, bool> state;
        std::string tok;
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 2 != tok.size() ||
                (tok[eq + 1] != '0' && tok[eq + 1] != '1'))
                throw IoError("trace line " + std::to_string(line_no) +
                              ": expected name=0 or name=1, got '" + tok + "'");
            state[tok.substr(0, eq)] = tok[eq + 1] == '1';
        }
        if (!state.empty()) steps.push_back(std::move(state));
    }
    return steps;
}

}  // namespace scenium
