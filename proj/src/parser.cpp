#include "scenium/parser.hpp"

#include <utility>

#include "scenium/errors.hpp"
#include "scenium/lexer.hpp"

namespace scenium {

namespace {

// Hand-written recursive descent over the token stream.  Choice points are
// resolved by bounded lookahead in priority order, so failures raise at the
// exact offending token.
class Parser {
  public:
    explicit Parser(const std::string& source) : toks_(tokenize(source)) {}

    Program program() {
        Program p;
        while (!at_end()) {
            if (at(Token::Kind::Newline)) {
                advance();
                continue;
            }
            p.statements.push_back(statement());
        }
        return p;
    }

    ExprPtr single_expression() {
        ExprPtr e = expr();
        if (at(Token::Kind::Newline)) advance();
        if (!at_end()) fail("end of input");
        return e;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek(size_t k = 0) const {
        size_t i = pos_ + k;
        if (i >= toks_.size()) i = toks_.size() - 1;  // End token
        return toks_[i];
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    bool at(Token::Kind kind) const { return peek().kind == kind; }
    bool at_kw(const char* kw, size_t k = 0) const {
        const Token& t = peek(k);
        return t.kind == Token::Kind::Keyword && t.text == kw;
    }
    bool at_op(const char* op, size_t k = 0) const {
        const Token& t = peek(k);
        return t.kind == Token::Kind::Op && t.text == op;
    }
    const Token& advance() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, expected, describe(t));
    }
    const Token& expect_kw(const char* kw) {
        if (!at_kw(kw)) fail(std::string("'") + kw + "'");
        return advance();
    }
    const Token& expect_op(const char* op) {
        if (!at_op(op)) fail(std::string("'") + op + "'");
        return advance();
    }
    const Token& expect_ident(const char* what) {
        if (!at(Token::Kind::Ident)) fail(what);
        return advance();
    }
    void expect_newline() {
        if (!at(Token::Kind::Newline)) fail("end of line");
        advance();
    }

    static Span span_of(const Token& t) {
        return Span{t.line, t.column, t.line,
                    t.column + static_cast<int>(t.text.size())};
    }
    void close_span(Span& s) const {
        const Token& prev = toks_[pos_ > 0 ? pos_ - 1 : 0];
        s.end_line = prev.line;
        s.end_column = prev.column + static_cast<int>(prev.text.size());
    }

    // ---------------------------------------------------------- statements --
    Statement statement() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Indent) fail("a statement");
        Statement s;
        s.span = span_of(t);
        if (at_kw("require")) {
            advance();
            s.kind = StmtKind::Require;
            s.value = expr();
            close_span(s.span);
            expect_newline();
            return s;
        }
        if (at_kw("mutate")) {
            advance();
            s.kind = StmtKind::Mutate;
            auto at_target = [&] { return at(Token::Kind::Ident) || at_kw("ego"); };
            if (at_target()) {
                s.targets.push_back(advance().text);
                while (at_op(",")) {
                    advance();
                    if (!at_target()) expect_ident("an object name");
                    s.targets.push_back(advance().text);
                }
            }
            if (at_kw("by")) {
                advance();
                s.value = expr();
            }
            close_span(s.span);
            expect_newline();
            return s;
        }
        if (at_kw("kind")) return kind_definition();
        if (at_kw("ego")) {
            advance();
            expect_op("=");
            s.kind = StmtKind::EgoAssignment;
            s.value = assignment_rhs();
            close_span(s.span);
            expect_newline();
            return s;
        }
        if (at_kw("new")) {
            s.kind = StmtKind::NewStmt;
            s.value = construction();
            close_span(s.span);
            expect_newline();
            return s;
        }
        if (t.kind == Token::Kind::Ident && at_op("=", 1)) {
            s.kind = StmtKind::Assignment;
            s.name = advance().text;
            advance();  // '='
            s.value = assignment_rhs();
            close_span(s.span);
            expect_newline();
            return s;
        }
        fail("a statement");
    }

    Statement kind_definition() {
        Statement s;
        s.span = span_of(peek());
        s.kind = StmtKind::KindDef;
        advance();  // 'kind'
        s.name = expect_ident("a kind name").text;
        s.parent = "Object";
        if (at_op("(")) {
            advance();
            s.parent = expect_ident("a parent kind name").text;
            expect_op(")");
        }
        expect_op(":");
        expect_newline();
        if (!at(Token::Kind::Indent)) fail("an indented block");
        advance();
        while (!at(Token::Kind::Dedent)) {
            if (at(Token::Kind::Newline)) {
                advance();
                continue;
            }
            PropertyDefault d;
            d.span = span_of(peek());
            d.name = expect_ident("a property name").text;
            d.value = expr();
            close_span(d.span);
            expect_newline();
            s.defaults.push_back(std::move(d));
        }
        advance();  // Dedent
        if (s.defaults.empty()) fail("a property default");
        close_span(s.span);
        return s;
    }

    // Right side of an assignment: an object construction (`new Kind ...`, or
    // `Kind specifier...` without `new`) or a plain expression.
    ExprPtr assignment_rhs() {
        if (at_kw("new")) return construction();
        if (at(Token::Kind::Ident) && starts_specifier(peek(1))) return construction();
        return expr();
    }

    static bool starts_specifier(const Token& t) {
        if (t.kind != Token::Kind::Keyword) return false;
        return t.text == "at" || t.text == "on" || t.text == "facing" ||
               t.text == "with" || t.text == "left" || t.text == "right" ||
               t.text == "ahead" || t.text == "behind" || t.text == "above" ||
               t.text == "below" || t.text == "offset" || t.text == "visible";
    }

    ExprPtr construction() {
        Span sp = span_of(peek());
        bool had_new = false;
        if (at_kw("new")) {
            advance();
            had_new = true;
        }
        auto e = make_expr(ExprKind::New, sp);
        e->text = expect_ident("a kind name").text;
        if (starts_specifier(peek()) || !had_new) {
            e->specifiers.push_back(specifier());
            while (at_op(",")) {
                advance();
                e->specifiers.push_back(specifier());
            }
        }
        close_span(e->span);
        return e;
    }

    Specifier specifier() {
        Specifier s;
        s.span = span_of(peek());
        if (at_kw("at")) {
            advance();
            s.kind = SpecifierKind::At;
            s.arg = expr();
        } else if (at_kw("offset")) {
            advance();
            expect_kw("by");
            s.kind = SpecifierKind::OffsetBy;
            s.arg = expr();
        } else if (at_kw("left")) {
            advance();
            expect_kw("of");
            s.kind = SpecifierKind::LeftOf;
            s.arg = expr();
            parse_by(s);
        } else if (at_kw("right")) {
            advance();
            expect_kw("of");
            s.kind = SpecifierKind::RightOf;
            s.arg = expr();
            parse_by(s);
        } else if (at_kw("ahead")) {
            advance();
            expect_kw("of");
            s.kind = SpecifierKind::AheadOf;
            s.arg = expr();
            parse_by(s);
        } else if (at_kw("behind")) {
            advance();
            s.kind = SpecifierKind::Behind;
            s.arg = expr();
            parse_by(s);
        } else if (at_kw("above")) {
            advance();
            s.kind = SpecifierKind::Above;
            s.arg = expr();
            parse_by(s);
        } else if (at_kw("below")) {
            advance();
            s.kind = SpecifierKind::Below;
            s.arg = expr();
            parse_by(s);
        } else if (at_kw("on")) {
            advance();
            s.kind = SpecifierKind::On;
            s.arg = expr();
        } else if (at_kw("facing")) {
            advance();
            if (at_kw("toward")) {
                advance();
                s.kind = SpecifierKind::FacingToward;
                s.arg = expr();
            } else if (at_kw("directly")) {
                advance();
                expect_kw("toward");
                s.kind = SpecifierKind::FacingDirectlyToward;
                s.arg = expr();
            } else {
                s.kind = SpecifierKind::Facing;
                s.arg = expr();
            }
        } else if (at_kw("with")) {
            advance();
            s.kind = SpecifierKind::With;
            s.prop = expect_ident("a property name").text;
            s.arg = expr();
        } else if (at_kw("visible")) {
            advance();
            s.kind = SpecifierKind::VisibleFrom;
            if (at_kw("from")) {
                advance();
                s.arg = expr();
            } else {
                auto e = make_expr(ExprKind::Name, s.span);
                e->text = "ego";
                s.arg = std::move(e);
            }
        } else {
            fail("a specifier");
        }
        close_span(s.span);
        return s;
    }

    void parse_by(Specifier& s) {
        if (at_kw("by")) {
            advance();
            s.by = expr();
        }
    }

    // --------------------------------------------------------- expressions --
    // Precedence, loosest to tightest:
    //   until < always/eventually/next < or < and < not
    //         < comparisons / relational phrases < + - < * / < unary -
    //         < postfix (call, .prop, deg) < primary
    ExprPtr expr() { return until_level(); }

    ExprPtr until_level() {
        ExprPtr left = temporal_unary();
        while (at_kw("until")) {
            advance();
            ExprPtr right = temporal_unary();
            auto e = make_expr(ExprKind::Until, left->span);
            e->span.end_line = right->span.end_line;
            e->span.end_column = right->span.end_column;
            e->children.push_back(std::move(left));
            e->children.push_back(std::move(right));
            left = std::move(e);
        }
        return left;
    }

    ExprPtr temporal_unary() {
        ExprKind kind;
        if (at_kw("always")) kind = ExprKind::Always;
        else if (at_kw("eventually")) kind = ExprKind::Eventually;
        else if (at_kw("next")) kind = ExprKind::Next;
        else return or_level();
        Span sp = span_of(peek());
        advance();
        auto e = make_expr(kind, sp);
        e->children.push_back(temporal_unary());
        close_span(e->span);
        return e;
    }

    ExprPtr or_level() {
        ExprPtr left = and_level();
        while (at_kw("or")) {
            advance();
            left = binary(ExprKind::Or, std::move(left), and_level());
        }
        return left;
    }

    ExprPtr and_level() {
        ExprPtr left = not_level();
        while (at_kw("and")) {
            advance();
            left = binary(ExprKind::And, std::move(left), not_level());
        }
        return left;
    }

    ExprPtr not_level() {
        if (at_kw("not")) {
            Span sp = span_of(peek());
            advance();
            auto e = make_expr(ExprKind::Not, sp);
            e->children.push_back(not_level());
            close_span(e->span);
            return e;
        }
        return comparison();
    }

    ExprPtr comparison() {
        ExprPtr left = relational();
        ExprKind kind;
        if (at_op("<")) kind = ExprKind::Lt;
        else if (at_op("<=")) kind = ExprKind::Le;
        else if (at_op(">")) kind = ExprKind::Gt;
        else if (at_op(">=")) kind = ExprKind::Ge;
        else if (at_op("==")) kind = ExprKind::Eq;
        else if (at_op("!=")) kind = ExprKind::Ne;
        else return left;
        advance();
        return binary(kind, std::move(left), relational());
    }

    // Phrases `X in R`, `X not in R`, `X can see Y`.
    ExprPtr relational() {
        ExprPtr left = additive();
        while (true) {
            if (at_kw("in")) {
                advance();
                left = binary(ExprKind::In, std::move(left), additive());
            } else if (at_kw("not") && at_kw("in", 1)) {
                advance();
                advance();
                ExprPtr in = binary(ExprKind::In, std::move(left), additive());
                auto e = make_expr(ExprKind::Not, in->span);
                e->children.push_back(std::move(in));
                left = std::move(e);
            } else if (at_kw("can")) {
                advance();
                expect_kw("see");
                left = binary(ExprKind::CanSee, std::move(left), additive());
            } else {
                return left;
            }
        }
    }

    ExprPtr additive() {
        ExprPtr left = multiplicative();
        while (true) {
            ExprKind kind;
            if (at_op("+")) kind = ExprKind::Add;
            else if (at_op("-")) kind = ExprKind::Sub;
            else return left;
            advance();
            left = binary(kind, std::move(left), multiplicative());
        }
    }

    ExprPtr multiplicative() {
        ExprPtr left = unary();
        while (true) {
            ExprKind kind;
            if (at_op("*")) kind = ExprKind::Mul;
            else if (at_op("/")) kind = ExprKind::Div;
            else return left;
            advance();
            left = binary(kind, std::move(left), unary());
        }
    }

    ExprPtr unary() {
        if (at_op("-")) {
            Span sp = span_of(peek());
            advance();
            auto e = make_expr(ExprKind::Neg, sp);
            e->children.push_back(unary());
            close_span(e->span);
            return e;
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr e = primary();
        while (true) {
            if (at_op(".")) {
                advance();
                auto p = make_expr(ExprKind::Property, e->span);
                p->text = expect_ident("a property name").text;
                p->children.push_back(std::move(e));
                close_span(p->span);
                e = std::move(p);
            } else if (at_kw("deg")) {
                advance();
                auto d = make_expr(ExprKind::Deg, e->span);
                d->children.push_back(std::move(e));
                close_span(d->span);
                e = std::move(d);
            } else {
                return e;
            }
        }
    }

    ExprPtr primary() {
        const Token& t = peek();
        Span sp = span_of(t);
        switch (t.kind) {
            case Token::Kind::Number: {
                advance();
                auto e = make_expr(ExprKind::Number, sp);
                e->number = t.number;
                return e;
            }
            case Token::Kind::String: {
                advance();
                auto e = make_expr(ExprKind::String, sp);
                e->text = t.text;
                return e;
            }
            case Token::Kind::Ident: {
                advance();
                if (at_op("(")) return call(t.text, sp);
                auto e = make_expr(ExprKind::Name, sp);
                e->text = t.text;
                return e;
            }
            default:
                break;
        }
        if (at_kw("true") || at_kw("false")) {
            auto e = make_expr(ExprKind::Boolean, sp);
            e->boolean = at_kw("true");
            advance();
            return e;
        }
        if (at_kw("ego")) {
            advance();
            auto e = make_expr(ExprKind::Name, sp);
            e->text = "ego";
            return e;
        }
        if (at_kw("distance")) {
            advance();
            auto e = make_expr(ExprKind::DistanceTo, sp);
            if (at_kw("from")) {
                advance();
                e->children.push_back(additive());
            } else {
                auto from = make_expr(ExprKind::Name, sp);
                from->text = "ego";
                e->children.push_back(std::move(from));
            }
            expect_kw("to");
            e->children.push_back(additive());
            close_span(e->span);
            return e;
        }
        if (at_op("(")) {
            advance();
            ExprPtr first = expr();
            if (at_op(")")) {
                advance();
                return first;  // grouping
            }
            if (!at_op(",")) fail("',' or ')'");
            auto vec = make_expr(ExprKind::Vector, sp);
            vec->children.push_back(std::move(first));
            advance();
            vec->children.push_back(expr());
            if (at_op(",")) {
                advance();
                vec->children.push_back(expr());
            } else {
                // a 2-component vector gets z = 0
                auto z = make_expr(ExprKind::Number, span_of(peek()));
                z->number = 0;
                vec->children.push_back(std::move(z));
            }
            expect_op(")");
            close_span(vec->span);
            return vec;
        }
        fail("an expression");
    }

    ExprPtr call(const std::string& callee, Span sp) {
        expect_op("(");
        auto e = make_expr(ExprKind::Call, sp);
        e->text = callee;
        if (!at_op(")")) {
            e->children.push_back(expr());
            while (at_op(",")) {
                advance();
                e->children.push_back(expr());
            }
        }
        expect_op(")");
        close_span(e->span);
        return e;
    }

    ExprPtr binary(ExprKind kind, ExprPtr left, ExprPtr right) {
        auto e = make_expr(kind, left->span);
        e->span.end_line = right->span.end_line;
        e->span.end_column = right->span.end_column;
        e->children.push_back(std::move(left));
        e->children.push_back(std::move(right));
        return e;
    }
};

}  // namespace

Program parse_program(const std::string& source) {
    return Parser(source).program();
}

ExprPtr parse_expression(const std::string& source) {
    return Parser(source).single_expression();
}

}  // namespace scenium
