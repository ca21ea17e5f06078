#include "scenium/ast.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace scenium {

Specifier::Specifier() = default;
Specifier::Specifier(Specifier&&) noexcept = default;
Specifier& Specifier::operator=(Specifier&&) noexcept = default;
Specifier::~Specifier() = default;

const char* specifier_kind_name(SpecifierKind kind) {
    switch (kind) {
        case SpecifierKind::At: return "at";
        case SpecifierKind::OffsetBy: return "offset-by";
        case SpecifierKind::LeftOf: return "left-of";
        case SpecifierKind::RightOf: return "right-of";
        case SpecifierKind::AheadOf: return "ahead-of";
        case SpecifierKind::Behind: return "behind";
        case SpecifierKind::Above: return "above";
        case SpecifierKind::Below: return "below";
        case SpecifierKind::On: return "on";
        case SpecifierKind::Facing: return "facing";
        case SpecifierKind::FacingToward: return "facing-toward";
        case SpecifierKind::FacingDirectlyToward: return "facing-directly-toward";
        case SpecifierKind::With: return "with";
        case SpecifierKind::VisibleFrom: return "visible-from";
    }
    return "?";
}

std::string format_number(double value) {
    if (std::isfinite(value) && value == std::floor(value) && std::abs(value) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(value));
        return buf;
    }
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

ExprPtr make_expr(ExprKind kind, Span span) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->span = span;
    return e;
}

ExprPtr clone_expr(const Expr& e) {
    auto c = make_expr(e.kind, e.span);
    c->number = e.number;
    c->boolean = e.boolean;
    c->text = e.text;
    for (const auto& child : e.children) c->children.push_back(clone_expr(*child));
    for (const auto& s : e.specifiers) {
        Specifier cs;
        cs.kind = s.kind;
        cs.span = s.span;
        cs.prop = s.prop;
        if (s.arg) cs.arg = clone_expr(*s.arg);
        if (s.by) cs.by = clone_expr(*s.by);
        c->specifiers.push_back(std::move(cs));
    }
    return c;
}

static bool specifier_equal(const Specifier& a, const Specifier& b) {
    if (a.kind != b.kind || a.prop != b.prop) return false;
    if (static_cast<bool>(a.arg) != static_cast<bool>(b.arg)) return false;
    if (a.arg && !expr_equal(*a.arg, *b.arg)) return false;
    if (static_cast<bool>(a.by) != static_cast<bool>(b.by)) return false;
    if (a.by && !expr_equal(*a.by, *b.by)) return false;
    return true;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    if (a.number != b.number || a.boolean != b.boolean || a.text != b.text) return false;
    if (a.children.size() != b.children.size()) return false;
    for (size_t i = 0; i < a.children.size(); ++i) {
        if (!expr_equal(*a.children[i], *b.children[i])) return false;
    }
    if (a.specifiers.size() != b.specifiers.size()) return false;
    for (size_t i = 0; i < a.specifiers.size(); ++i) {
        if (!specifier_equal(a.specifiers[i], b.specifiers[i])) return false;
    }
    return true;
}

bool program_equal(const Program& a, const Program& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (size_t i = 0; i < a.statements.size(); ++i) {
        const Statement& s = a.statements[i];
        const Statement& t = b.statements[i];
        if (s.kind != t.kind || s.name != t.name || s.parent != t.parent) return false;
        if (s.targets != t.targets) return false;
        if (static_cast<bool>(s.value) != static_cast<bool>(t.value)) return false;
        if (s.value && !expr_equal(*s.value, *t.value)) return false;
        if (s.defaults.size() != t.defaults.size()) return false;
        for (size_t k = 0; k < s.defaults.size(); ++k) {
            if (s.defaults[k].name != t.defaults[k].name) return false;
            if (!expr_equal(*s.defaults[k].value, *t.defaults[k].value)) return false;
        }
    }
    return true;
}

// --------------------------------------------------------------- dumping ----

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

void dump_expr(const Expr& e, std::string& out);

void dump_specifier(const Specifier& s, std::string& out) {
    out += '(';
    out += specifier_kind_name(s.kind);
    if (s.kind == SpecifierKind::With) {
        out += ' ';
        out += s.prop;
    }
    if (s.arg) {
        out += ' ';
        dump_expr(*s.arg, out);
    }
    if (s.by) {
        out += " (by ";
        dump_expr(*s.by, out);
        out += ')';
    }
    out += ')';
}

void dump_tagged(const char* tag, const Expr& e, std::string& out) {
    out += '(';
    out += tag;
    for (const auto& c : e.children) {
        out += ' ';
        dump_expr(*c, out);
    }
    out += ')';
}

void dump_expr(const Expr& e, std::string& out) {
    switch (e.kind) {
        case ExprKind::Number: out += format_number(e.number); return;
        case ExprKind::String: out += quote(e.text); return;
        case ExprKind::Boolean: out += e.boolean ? "true" : "false"; return;
        case ExprKind::Name: out += e.text; return;
        case ExprKind::Vector: dump_tagged("vec", e, out); return;
        case ExprKind::Property:
            out += "(prop ";
            dump_expr(*e.children[0], out);
            out += ' ';
            out += e.text;
            out += ')';
            return;
        case ExprKind::Neg: dump_tagged("neg", e, out); return;
        case ExprKind::Deg: dump_tagged("deg", e, out); return;
        case ExprKind::Add: dump_tagged("add", e, out); return;
        case ExprKind::Sub: dump_tagged("sub", e, out); return;
        case ExprKind::Mul: dump_tagged("mul", e, out); return;
        case ExprKind::Div: dump_tagged("div", e, out); return;
        case ExprKind::Lt: dump_tagged("lt", e, out); return;
        case ExprKind::Le: dump_tagged("le", e, out); return;
        case ExprKind::Gt: dump_tagged("gt", e, out); return;
        case ExprKind::Ge: dump_tagged("ge", e, out); return;
        case ExprKind::Eq: dump_tagged("eq", e, out); return;
        case ExprKind::Ne: dump_tagged("ne", e, out); return;
        case ExprKind::And: dump_tagged("and", e, out); return;
        case ExprKind::Or: dump_tagged("or", e, out); return;
        case ExprKind::Not: dump_tagged("not", e, out); return;
        case ExprKind::Call:
            out += "(call ";
            out += e.text;
            for (const auto& c : e.children) {
                out += ' ';
                dump_expr(*c, out);
            }
            out += ')';
            return;
        case ExprKind::DistanceTo: dump_tagged("distance", e, out); return;
        case ExprKind::CanSee: dump_tagged("can-see", e, out); return;
        case ExprKind::In: dump_tagged("in", e, out); return;
        case ExprKind::Always: dump_tagged("always", e, out); return;
        case ExprKind::Eventually: dump_tagged("eventually", e, out); return;
        case ExprKind::Next: dump_tagged("next", e, out); return;
        case ExprKind::Until: dump_tagged("until", e, out); return;
        case ExprKind::New:
            out += "(new ";
            out += e.text;
            for (const auto& s : e.specifiers) {
                out += ' ';
                dump_specifier(s, out);
            }
            out += ')';
            return;
    }
}

void dump_statement(const Statement& s, std::string& out) {
    switch (s.kind) {
        case StmtKind::Assignment:
            out += "(assign ";
            out += s.name;
            out += ' ';
            dump_expr(*s.value, out);
            out += ')';
            return;
        case StmtKind::EgoAssignment:
            out += "(ego-assign ";
            dump_expr(*s.value, out);
            out += ')';
            return;
        case StmtKind::NewStmt:
            out += "(new-stmt ";
            dump_expr(*s.value, out);
            out += ')';
            return;
        case StmtKind::Require:
            out += "(require ";
            dump_expr(*s.value, out);
            out += ')';
            return;
        case StmtKind::Mutate:
            out += "(mutate";
            if (!s.targets.empty()) {
                out += " (targets";
                for (const auto& t : s.targets) {
                    out += ' ';
                    out += t;
                }
                out += ')';
            }
            if (s.value) {
                out += " (by ";
                dump_expr(*s.value, out);
                out += ')';
            }
            out += ')';
            return;
        case StmtKind::KindDef:
            out += "(kind ";
            out += s.name;
            out += " (parent ";
            out += s.parent;
            out += ')';
            for (const auto& d : s.defaults) {
                out += " (default ";
                out += d.name;
                out += ' ';
                dump_expr(*d.value, out);
                out += ')';
            }
            out += ')';
            return;
    }
}

}  // namespace

std::string dump(const Expr& e) {
    std::string out;
    dump_expr(e, out);
    return out;
}

std::string dump(const Program& p) {
    std::string out = "(program\n";
    for (const auto& s : p.statements) {
        out += "  ";
        dump_statement(s, out);
        out += '\n';
    }
    out += ")\n";
    return out;
}

bool contains_temporal(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Always:
        case ExprKind::Eventually:
        case ExprKind::Next:
        case ExprKind::Until:
            return true;
        default:
            break;
    }
    for (const auto& c : e.children) {
        if (contains_temporal(*c)) return true;
    }
    for (const auto& s : e.specifiers) {
        if (s.arg && contains_temporal(*s.arg)) return true;
        if (s.by && contains_temporal(*s.by)) return true;
    }
    return false;
}

// ---------------------------------------------------------- pretty print ----

namespace {

void pp_expr(const Expr& e, std::string& out);

bool pp_atomic(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Number:
        case ExprKind::String:
        case ExprKind::Boolean:
        case ExprKind::Name:
        case ExprKind::Vector:
        case ExprKind::Call:
            return true;
        default:
            return false;
    }
}

void pp_wrapped(const Expr& e, std::string& out) {
    if (pp_atomic(e)) {
        pp_expr(e, out);
    } else {
        out += '(';
        pp_expr(e, out);
        out += ')';
    }
}

void pp_binary(const Expr& e, const char* op, std::string& out) {
    pp_wrapped(*e.children[0], out);
    out += ' ';
    out += op;
    out += ' ';
    pp_wrapped(*e.children[1], out);
}

void pp_expr(const Expr& e, std::string& out) {
    switch (e.kind) {
        case ExprKind::Number: out += format_number(e.number); return;
        case ExprKind::String: out += quote(e.text); return;
        case ExprKind::Boolean: out += e.boolean ? "true" : "false"; return;
        case ExprKind::Name: out += e.text; return;
        case ExprKind::Vector:
            out += '(';
            for (size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                pp_expr(*e.children[i], out);
            }
            out += ')';
            return;
        case ExprKind::Property:
            pp_wrapped(*e.children[0], out);
            out += '.';
            out += e.text;
            return;
        case ExprKind::Neg:
            out += '-';
            pp_wrapped(*e.children[0], out);
            return;
        case ExprKind::Deg:
            pp_wrapped(*e.children[0], out);
            out += " deg";
            return;
        case ExprKind::Add: pp_binary(e, "+", out); return;
        case ExprKind::Sub: pp_binary(e, "-", out); return;
        case ExprKind::Mul: pp_binary(e, "*", out); return;
        case ExprKind::Div: pp_binary(e, "/", out); return;
        case ExprKind::Lt: pp_binary(e, "<", out); return;
        case ExprKind::Le: pp_binary(e, "<=", out); return;
        case ExprKind::Gt: pp_binary(e, ">", out); return;
        case ExprKind::Ge: pp_binary(e, ">=", out); return;
        case ExprKind::Eq: pp_binary(e, "==", out); return;
        case ExprKind::Ne: pp_binary(e, "!=", out); return;
        case ExprKind::And: pp_binary(e, "and", out); return;
        case ExprKind::Or: pp_binary(e, "or", out); return;
        case ExprKind::Not:
            out += "not ";
            pp_wrapped(*e.children[0], out);
            return;
        case ExprKind::Call:
            out += e.text;
            out += '(';
            for (size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                pp_expr(*e.children[i], out);
            }
            out += ')';
            return;
        case ExprKind::DistanceTo:
            out += "distance from ";
            pp_wrapped(*e.children[0], out);
            out += " to ";
            pp_wrapped(*e.children[1], out);
            return;
        case ExprKind::CanSee:
            pp_wrapped(*e.children[0], out);
            out += " can see ";
            pp_wrapped(*e.children[1], out);
            return;
        case ExprKind::In:
            pp_wrapped(*e.children[0], out);
            out += " in ";
            pp_wrapped(*e.children[1], out);
            return;
        case ExprKind::Always:
            out += "always ";
            pp_wrapped(*e.children[0], out);
            return;
        case ExprKind::Eventually:
            out += "eventually ";
            pp_wrapped(*e.children[0], out);
            return;
        case ExprKind::Next:
            out += "next ";
            pp_wrapped(*e.children[0], out);
            return;
        case ExprKind::Until:
            pp_wrapped(*e.children[0], out);
            out += " until ";
            pp_wrapped(*e.children[1], out);
            return;
        case ExprKind::New: {
            out += "new ";
            out += e.text;
            bool first = true;
            for (const auto& s : e.specifiers) {
                out += first ? " " : ", ";
                first = false;
                switch (s.kind) {
                    case SpecifierKind::At: out += "at "; break;
                    case SpecifierKind::OffsetBy: out += "offset by "; break;
                    case SpecifierKind::LeftOf: out += "left of "; break;
                    case SpecifierKind::RightOf: out += "right of "; break;
                    case SpecifierKind::AheadOf: out += "ahead of "; break;
                    case SpecifierKind::Behind: out += "behind "; break;
                    case SpecifierKind::Above: out += "above "; break;
                    case SpecifierKind::Below: out += "below "; break;
                    case SpecifierKind::On: out += "on "; break;
                    case SpecifierKind::Facing: out += "facing "; break;
                    case SpecifierKind::FacingToward: out += "facing toward "; break;
                    case SpecifierKind::FacingDirectlyToward:
                        out += "facing directly toward ";
                        break;
                    case SpecifierKind::With:
                        out += "with ";
                        out += s.prop;
                        out += ' ';
                        break;
                    case SpecifierKind::VisibleFrom: out += "visible from "; break;
                }
                if (s.arg) pp_wrapped(*s.arg, out);
                if (s.by) {
                    out += " by ";
                    pp_wrapped(*s.by, out);
                }
            }
            return;
        }
    }
}

}  // namespace

std::string pretty_print(const Program& p) {
    std::string out;
    for (const auto& s : p.statements) {
        switch (s.kind) {
            case StmtKind::Assignment:
                out += s.name;
                out += " = ";
                pp_expr(*s.value, out);
                break;
            case StmtKind::EgoAssignment:
                out += "ego = ";
                pp_expr(*s.value, out);
                break;
            case StmtKind::NewStmt:
                pp_expr(*s.value, out);
                break;
            case StmtKind::Require:
                out += "require ";
                pp_expr(*s.value, out);
                break;
            case StmtKind::Mutate:
                out += "mutate";
                for (size_t i = 0; i < s.targets.size(); ++i) {
                    out += i ? ", " : " ";
                    out += s.targets[i];
                }
                if (s.value) {
                    out += " by ";
                    pp_expr(*s.value, out);
                }
                break;
            case StmtKind::KindDef:
                out += "kind ";
                out += s.name;
                out += '(';
                out += s.parent;
                out += "):\n";
                for (const auto& d : s.defaults) {
                    out += "    ";
                    out += d.name;
                    out += ' ';
                    pp_expr(*d.value, out);
                    out += '\n';
                }
                continue;  // block form emits its own newlines
        }
        out += '\n';
    }
    return out;
}

}  // namespace scenium
