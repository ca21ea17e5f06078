#include "scenium/scene.hpp"

#include <memory>

#include "scenium/errors.hpp"
#include "scenium/parser.hpp"

namespace scenium {

bool SceneObject::CacheKey::matches(const SceneObject& o) const {
    return position == o.position && dims == o.dims && yaw == o.yaw && pitch == o.pitch &&
           roll == o.roll && parent.approx_equal(o.parent_orientation, 0.0);
}

const CollisionMesh& SceneObject::collision() const {
    if (!cache_ || !cache_key_.matches(*this)) {
        cache_ = std::make_shared<CollisionMesh>(shape.unit_mesh(), pose(), dims);
        cache_key_ = CacheKey{position, dims, yaw, pitch, roll, parent_orientation};
    }
    return *cache_;
}

int Scene::find_object(const std::string& name) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

// Built-in object kinds, defined in the language itself and parsed once.
const char* kPrelude = R"(
kind Ball(Object):
    shape "sphere"
    width 0.3
    length 0.3
    height 0.3

kind Chair(Object):
    width 0.45
    length 0.45
    height 0.9

kind Plane(Object):
    width 1.2
    length 1.2
    height 0.4

kind Toy(Object):
    width Range(0.1, 0.28)
    length Range(0.1, 0.28)
    height Range(0.1, 0.28)
    shape Uniform("box", "sphere", "cylinder", "cone")

kind Vacuum(Object):
    shape "cylinder"
    width 0.34
    length 0.34
    height 0.09

kind Building(Object):
    width Range(8, 15)
    length Range(8, 15)
    height Range(6, 20)

kind Car(Object):
    width 1.9
    length 4.5
    height 1.5
)";

}  // namespace

KindTable::KindTable() {
    kinds_["Object"] = ObjectKind{"Object", "", {}};
    auto prelude = std::make_shared<Program>(parse_program(kPrelude));
    for (const auto& stmt : prelude->statements) register_one(stmt);
    keep_alive_.push_back(std::move(prelude));
}

void KindTable::register_kinds(const Program& program) {
    for (const auto& stmt : program.statements)
        if (stmt.kind == StmtKind::KindDef) register_one(stmt);
}

void KindTable::register_one(const Statement& stmt) {
    if (kinds_.count(stmt.name))
        throw EvalError("kind '" + stmt.name + "' is already defined");
    if (!kinds_.count(stmt.parent))
        throw EvalError("unknown parent kind '" + stmt.parent + "' for kind '" + stmt.name + "'");
    ObjectKind k;
    k.name = stmt.name;
    k.parent = stmt.parent;
    for (const auto& d : stmt.defaults) k.defaults.emplace_back(d.name, d.value.get());
    kinds_[stmt.name] = std::move(k);
}

const ObjectKind& KindTable::get(const std::string& name) const {
    auto it = kinds_.find(name);
    if (it == kinds_.end()) throw EvalError("unknown kind '" + name + "'");
    return it->second;
}

std::vector<std::pair<std::string, const Expr*>> KindTable::chain(const std::string& kind) const {
    std::vector<const ObjectKind*> line;
    for (const ObjectKind* k = &get(kind); ; k = &get(k->parent)) {
        line.push_back(k);
        if (k->parent.empty()) break;
    }
    std::vector<std::pair<std::string, const Expr*>> out;
    for (auto it = line.rbegin(); it != line.rend(); ++it)
        for (const auto& d : (*it)->defaults) out.push_back(d);
    return out;
}

}  // namespace scenium
