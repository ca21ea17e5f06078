#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "scenium/ast.hpp"
#include "scenium/errors.hpp"
#include "scenium/parser.hpp"

using namespace scenium;

namespace {

const std::vector<std::string> kCorpus = {
    "fig1_facing", "fig2_chair_on_floor", "fig3_on_modifying", "sec21_objects",
    "sec24_intersection_require", "sec32_require", "vacuum_room", "occluded_approach",
    "mesh_table", "mutate_visible",
};

std::string dump_expr(const std::string& src) { return dump(*parse_expression(src)); }

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("corpus files match their golden trees") {
    for (const std::string& name : kCorpus) {
        CAPTURE(name);
        std::string src = read_file(test_util::corpus_path(name + ".scn"));
        std::string golden =
            read_file(test_util::source_dir() + "/corpus/golden/" + name + ".ast");
        Program p = parse_program(src);
        CHECK(dump(p) == golden);
    }
}

TEST_CASE("pretty-printed corpus reparses to an equal tree") {
    for (const std::string& name : kCorpus) {
        CAPTURE(name);
        Program p = parse_program(read_file(test_util::corpus_path(name + ".scn")));
        std::string printed = pretty_print(p);
        Program again = parse_program(printed);
        CHECK(program_equal(p, again));
    }
}

TEST_CASE("crossing requirement has the until-of-conjunction shape") {
    Program p = parse_program(read_file(test_util::corpus_path("sec24_intersection_require.scn")));
    const Statement* req = nullptr;
    for (const Statement& s : p.statements)
        if (s.kind == StmtKind::Require) req = &s;
    REQUIRE(req != nullptr);
    const Expr& e = *req->value;
    REQUIRE(e.kind == ExprKind::Until);
    const Expr& lhs = *e.children[0];
    REQUIRE(lhs.kind == ExprKind::And);
    REQUIRE(lhs.children[0]->kind == ExprKind::Not);
    CHECK(lhs.children[0]->children[0]->kind == ExprKind::In);
    REQUIRE(lhs.children[1]->kind == ExprKind::Not);
    CHECK(lhs.children[1]->children[0]->kind == ExprKind::In);
    CHECK(e.children[1]->kind == ExprKind::In);
}

TEST_CASE("temporal operator precedence") {
    // prefix operators bind tighter than until, and until is left-associative
    CHECK(dump_expr("always a until b") == dump_expr("(always a) until b"));
    CHECK(dump_expr("a until b until c") == dump_expr("(a until b) until c"));
    CHECK(dump_expr("a until eventually b") == dump_expr("a until (eventually b)"));
    CHECK(dump_expr("always eventually a") == dump_expr("always (eventually a)"));
    // boolean connectives sit below the temporal prefixes
    CHECK(dump_expr("always a and b") == dump_expr("always (a and b)"));
    // prefix operators are not valid inside a binary operand without parens
    CHECK_THROWS_AS(parse_expression("eventually b and next a"), ParseError);
    CHECK_NOTHROW(parse_expression("eventually (b and (next a))"));
}

TEST_CASE("boolean and arithmetic precedence") {
    CHECK(dump_expr("not a and b") == dump_expr("(not a) and b"));
    CHECK(dump_expr("a or b and c") == dump_expr("a or (b and c)"));
    CHECK(dump_expr("1 + 2 * 3 - 4") == dump_expr("(1 + (2 * 3)) - 4"));
    CHECK(dump_expr("1 - 2 - 3") == dump_expr("(1 - 2) - 3"));
    CHECK(dump_expr("6 / 2 / 3") == dump_expr("(6 / 2) / 3"));
    CHECK(dump_expr("-90 deg") == dump_expr("-(90 deg)"));
    CHECK(dump_expr("a < 1 + 2") == dump_expr("a < (1 + 2)"));
    CHECK(dump_expr("a and b or c") == dump_expr("(a and b) or c"));
}

TEST_CASE("relational phrases") {
    CHECK(dump_expr("p not in r") == dump_expr("not (p in r)"));
    CHECK(dump_expr("a in r in s") == dump_expr("(a in r) in s"));
    CHECK(dump_expr("distance to x < 5") == dump_expr("(distance to x) < 5"));
    CHECK(dump_expr("distance to x") == dump_expr("distance from ego to x"));
    CHECK(dump_expr("ego can see x until b") == dump_expr("(ego can see x) until b"));
    ExprPtr e = parse_expression("ego can see car");
    CHECK(e->kind == ExprKind::CanSee);
    CHECK(e->children[0]->text == "ego");
    CHECK(e->children[1]->text == "car");
    // comparisons do not chain
    CHECK_THROWS_AS(parse_expression("1 < 2 < 3"), ParseError);
}

TEST_CASE("vectors and grouping") {
    CHECK(dump_expr("(1, 2)") == dump_expr("(1, 2, 0)"));  // 2-vectors gain z = 0
    ExprPtr v = parse_expression("(1, 2, 3)");
    CHECK(v->kind == ExprKind::Vector);
    CHECK(v->children.size() == 3);
    ExprPtr g = parse_expression("(1)");
    CHECK(g->kind == ExprKind::Number);  // plain grouping, not a vector
    // vector components are full expressions
    ExprPtr sums = parse_expression("(1 + 2, x.y, -4)");
    REQUIRE(sums->kind == ExprKind::Vector);
    CHECK(sums->children[0]->kind == ExprKind::Add);
    CHECK(sums->children[1]->kind == ExprKind::Property);
    CHECK(sums->children[2]->kind == ExprKind::Neg);
}

TEST_CASE("number lexing") {
    CHECK(parse_expression("1e1")->number == 10.0);
    CHECK(parse_expression("2.5e-2")->number == 0.025);
    CHECK(parse_expression("0.125")->number == 0.125);
    // "1e" is a number followed by a stray identifier, not a lex error
    CHECK_THROWS_AS(parse_expression("1e"), ParseError);
}

TEST_CASE("string literals and escapes") {
    CHECK(parse_expression("\"plain\"")->text == "plain");
    CHECK(parse_expression("\"a\\n\\tb\\\\c\\\"d\"")->text == "a\n\tb\\c\"d");
    CHECK_THROWS_AS(parse_program("x = \"a\\qb\""), LexError);
    CHECK_THROWS_AS(parse_program("x = \"unterminated"), LexError);
}

TEST_CASE("lex and parse errors carry positions") {
    try {
        parse_program("a = 1\nb = $");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 5);
    }
    try {
        parse_program("x = )");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 5);
    }
}

TEST_CASE("statement forms") {
    Program p = parse_program(
        "x = 1\n"
        "ego = new Ball\n"
        "new Chair at (0, 0, 0)\n"
        "require always x < 2\n"
        "mutate\n"
        "mutate ego\n"
        "mutate a, b by 0.5\n");
    REQUIRE(p.statements.size() == 7);
    CHECK(p.statements[0].kind == StmtKind::Assignment);
    CHECK(p.statements[0].name == "x");
    CHECK(p.statements[1].kind == StmtKind::EgoAssignment);
    CHECK(p.statements[2].kind == StmtKind::NewStmt);
    CHECK(p.statements[3].kind == StmtKind::Require);
    CHECK(contains_temporal(*p.statements[3].value));
    CHECK(p.statements[4].targets.empty());  // bare mutate: everything
    CHECK(p.statements[5].targets == std::vector<std::string>{"ego"});
    CHECK(p.statements[6].targets == std::vector<std::string>{"a", "b"});
    CHECK(p.statements[6].value != nullptr);
    // statement spans point at their source lines
    for (size_t i = 0; i < p.statements.size(); ++i)
        CHECK(p.statements[i].span.line == static_cast<int>(i + 1));
}

TEST_CASE("construction without new requires specifiers") {
    CHECK(dump(parse_program("floor = Object with width 5")) ==
          dump(parse_program("floor = new Object with width 5")));
    // a bare kind name with no specifiers is just a name reference
    Program p = parse_program("x = Car");
    CHECK(p.statements[0].value->kind == ExprKind::Name);
    CHECK(p.statements[0].value->text == "Car");
    // `new` allows omitting specifiers entirely
    Program q = parse_program("x = new Car");
    CHECK(q.statements[0].value->kind == ExprKind::New);
    CHECK(q.statements[0].value->specifiers.empty());
}

TEST_CASE("specifier lists") {
    Program p = parse_program(
        "x = new Chair at (1, 2, 3), on floor, facing 30 deg,\n"
        "    with width 2, left of y by 1\n");
    const Expr& e = *p.statements[0].value;
    REQUIRE(e.kind == ExprKind::New);
    REQUIRE(e.specifiers.size() == 5);
    CHECK(e.specifiers[0].kind == SpecifierKind::At);
    CHECK(e.specifiers[1].kind == SpecifierKind::On);
    CHECK(e.specifiers[2].kind == SpecifierKind::Facing);
    CHECK(e.specifiers[3].kind == SpecifierKind::With);
    CHECK(e.specifiers[3].prop == "width");
    CHECK(e.specifiers[4].kind == SpecifierKind::LeftOf);
    CHECK(e.specifiers[4].by != nullptr);
    CHECK(e.specifiers[1].span.line == 1);
    CHECK(e.specifiers[4].span.line == 2);
}

TEST_CASE("kind definitions") {
    Program p = parse_program(
        "kind Sofa(Chair):\n"
        "    width 1.8\n"
        "    length Range(0.7, 0.9)\n"
        "kind Stool:\n"
        "    height 0.45\n");
    REQUIRE(p.statements.size() == 2);
    CHECK(p.statements[0].kind == StmtKind::KindDef);
    CHECK(p.statements[0].name == "Sofa");
    CHECK(p.statements[0].parent == "Chair");
    REQUIRE(p.statements[0].defaults.size() == 2);
    CHECK(p.statements[0].defaults[0].name == "width");
    CHECK(p.statements[1].parent == "Object");  // default parent
    // a kind block needs at least one property default
    CHECK_THROWS_AS(parse_program("kind Empty(Object):\nx = 1"), ParseError);
    // dedent to a level that was never opened
    CHECK_THROWS_AS(parse_program("kind K(Object):\n        width 2\n    length 3\n"),
                    ParseError);
}

TEST_CASE("property access and calls") {
    ExprPtr e = parse_expression("car.position");
    CHECK(e->kind == ExprKind::Property);
    CHECK(e->text == "position");
    CHECK(e->children[0]->text == "car");
    ExprPtr chained = parse_expression("a.b.c");
    CHECK(chained->text == "c");
    CHECK(chained->children[0]->text == "b");
    ExprPtr call = parse_expression("Range(1, 2)");
    CHECK(call->kind == ExprKind::Call);
    CHECK(call->text == "Range");
    CHECK(call->children.size() == 2);
    ExprPtr str_args = parse_expression("Uniform(\"box\", \"cone\")");
    CHECK(str_args->children.size() == 2);
    CHECK(str_args->children[0]->kind == ExprKind::String);
}

TEST_CASE("comments and blank lines are skipped") {
    Program p = parse_program(
        "# leading comment\n"
        "\n"
        "x = 1  # trailing comment\n"
        "\n"
        "# closing comment\n");
    REQUIRE(p.statements.size() == 1);
    CHECK(p.statements[0].span.line == 3);
}

TEST_CASE("parenthesized continuations span lines") {
    Program p = parse_program("require (a and\n    b)\n");
    REQUIRE(p.statements.size() == 1);
    CHECK(p.statements[0].value->kind == ExprKind::And);
}

}  // TEST_SUITE
