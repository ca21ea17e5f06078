#pragma once

#include <map>
#include <string>
#include <vector>

#include "scenium/ast.hpp"
#include "scenium/evaluator.hpp"
#include "scenium/scene.hpp"

namespace scenium {

// One property claim made by a specifier: lower priority numbers win.
// A modifying claim does not compete for ownership; it reworks the owner's
// value after it is produced (and produces the value itself when the
// property has no other producer).
struct PropClaim {
    int priority = 0;
    bool modifying = false;
};

// Properties claimed by a specifier, with priorities.
std::map<std::string, PropClaim> specifier_claims(const Specifier& s);

// Same, by surface syntax name ("at", "left of", "facing toward", ...);
// `with_prop` names the property for "with".  Unknown names throw
// UnknownSpecifier.
std::map<std::string, PropClaim> specifier_claims_by_name(const std::string& name,
                                                          const std::string& with_prop = "");

// Properties of the object under construction a specifier reads.
std::vector<std::string> specifier_reads(const Specifier& s);

struct PlanAction {
    enum class Type { Default, Apply, Modify };
    Type type = Type::Default;
    std::string prop;                 // Default: property being defaulted
    const Specifier* spec = nullptr;  // Apply/Modify
    std::vector<std::string> owned;   // properties this action writes
};

struct SpecifierPlan {
    std::vector<PlanAction> actions;  // in execution order
};

// Resolves ownership (ConflictError on equal-priority double writes) and
// orders defaults, specifier applications and modifications topologically
// (CycleError when reads are circular).  `extra_default_props` lists
// non-built-in properties the object's kind supplies defaults for.  Pure:
// no expressions are evaluated.  The order is canonical — permuting the
// specifier list yields the same plan.
SpecifierPlan resolve_specifiers(const std::vector<Specifier>& specs,
                                 const std::vector<std::string>& extra_default_props = {});

// Resolves and evaluates: builds the object `name` of kind `kind_name` from
// its specifiers, drawing any random values from ctx.rng.
SceneObject build_object(const std::string& kind_name, const std::string& name,
                         const std::vector<Specifier>& specs, const KindTable& kinds,
                         EvalContext& ctx);

}  // namespace scenium
