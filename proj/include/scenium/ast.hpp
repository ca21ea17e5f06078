#pragma once

#include <memory>
#include <string>
#include <vector>

namespace scenium {

// Half-open source range; lines and columns are 1-based.
struct Span {
    int line = 1, column = 1;
    int end_line = 1, end_column = 1;
};

enum class ExprKind {
    Number, String, Boolean, Vector, Name, Property,
    Neg, Deg,
    Add, Sub, Mul, Div,
    Lt, Le, Gt, Ge, Eq, Ne,
    And, Or, Not,
    Call,        // text = callee, children = arguments
    DistanceTo,  // children = {from, to}; `distance to X` stores ego as from
    CanSee,      // children = {viewer, target}
    In,          // children = {value, region}
    Always, Eventually, Next, Until,
    New,         // text = kind name, specifiers attached
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class SpecifierKind {
    At, OffsetBy, LeftOf, RightOf, AheadOf, Behind, Above, Below,
    On, Facing, FacingToward, FacingDirectlyToward, With, VisibleFrom,
};

struct Specifier {
    SpecifierKind kind{};
    Span span;
    std::string prop;  // property name for With
    ExprPtr arg;       // main argument (null for bare `visible` before desugaring)
    ExprPtr by;        // optional `by` amount

    Specifier();
    Specifier(Specifier&&) noexcept;
    Specifier& operator=(Specifier&&) noexcept;
    ~Specifier();
};

struct Expr {
    ExprKind kind{};
    Span span;
    double number = 0;
    bool boolean = false;
    std::string text;  // string literal / name / property / callee / kind name
    std::vector<ExprPtr> children;
    std::vector<Specifier> specifiers;  // New only
};

enum class StmtKind { Assignment, EgoAssignment, NewStmt, Require, Mutate, KindDef };

struct PropertyDefault {
    std::string name;
    ExprPtr value;
    Span span;
};

struct Statement {
    StmtKind kind{};
    Span span;
    std::string name;    // assignment target / kind name
    std::string parent;  // kind definition parent
    ExprPtr value;       // assigned expr / require formula / mutate scale
    std::vector<std::string> targets;        // mutate
    std::vector<PropertyDefault> defaults;   // kind definition
};

struct Program {
    std::vector<Statement> statements;
};

const char* specifier_kind_name(SpecifierKind kind);

// Shortest exact decimal form: integers print bare, everything else with
// enough digits to round-trip.
std::string format_number(double value);

bool expr_equal(const Expr& a, const Expr& b);
bool program_equal(const Program& a, const Program& b);

// s-expression dump, one statement per line (the golden-tree format).
std::string dump(const Expr& e);
std::string dump(const Program& p);

// Valid source text that reparses to a structurally equal tree.
std::string pretty_print(const Program& p);

// Whether the tree uses always/eventually/next/until anywhere.
bool contains_temporal(const Expr& e);

ExprPtr make_expr(ExprKind kind, Span span);
ExprPtr clone_expr(const Expr& e);

}  // namespace scenium
