#pragma once

#include "scenium/ast.hpp"
#include "scenium/rng.hpp"
#include "scenium/scene.hpp"
#include "scenium/value.hpp"

namespace scenium {

// Everything an expression can see.  `rng` may be null in contexts where
// random values are not allowed (static validation); distribution calls then
// fail with EvalError.  `heuristics` selects the fast geometry paths used by
// `can see` queries.
struct EvalContext {
    const Scene* scene = nullptr;
    Rng* rng = nullptr;
    bool heuristics = true;
    double default_ray_density = 1.0;  // rayDensity for objects that do not set it
};

Value evaluate(const Expr& e, EvalContext& ctx);

double eval_number(const Expr& e, EvalContext& ctx);
bool eval_bool(const Expr& e, EvalContext& ctx);
Vec3 eval_vec(const Expr& e, EvalContext& ctx);

// Position of a point-like value (vector, or an object's position).
Vec3 point_of(const Value& v, const Scene& scene);

}  // namespace scenium
