#include "scenium/lexer.hpp"

#include <cctype>
#include <cstdlib>
#include <set>

#include "scenium/errors.hpp"

namespace scenium {

namespace {

const std::set<std::string>& keywords() {
    static const std::set<std::string> kw = {
        "new", "at", "on", "facing", "toward", "directly",
        "left", "right", "ahead", "behind", "above", "below",
        "of", "by", "with", "deg",
        "require", "always", "eventually", "next", "until",
        "can", "see", "in", "distance", "to", "from",
        "mutate", "ego", "kind", "visible", "offset",
        "and", "or", "not", "true", "false",
    };
    return kw;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_keyword(const std::string& word) { return keywords().count(word) > 0; }

std::string describe(const Token& t) {
    switch (t.kind) {
        case Token::Kind::Newline: return "end of line";
        case Token::Kind::Indent: return "indent";
        case Token::Kind::Dedent: return "end of block";
        case Token::Kind::End: return "end of input";
        default: return "'" + t.text + "'";
    }
}

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::vector<int> indents{0};
    size_t i = 0;
    const size_t n = src.size();
    int line = 1;
    size_t line_begin = 0;
    int depth = 0;
    bool at_line_start = true;

    auto col = [&](size_t pos) { return static_cast<int>(pos - line_begin) + 1; };
    auto push = [&](Token::Kind kind, std::string text, size_t pos, double num = 0) {
        out.push_back(Token{kind, std::move(text), num, line, col(pos)});
    };
    auto last_significant_is_comma = [&]() {
        return !out.empty() && out.back().kind == Token::Kind::Op && out.back().text == ",";
    };

    while (i < n) {
        if (at_line_start) {
            // Measure indentation; blank and comment-only lines are skipped.
            int indent = 0;
            size_t j = i;
            while (j < n && (src[j] == ' ' || src[j] == '\t')) {
                indent = src[j] == '\t' ? (indent / 8 + 1) * 8 : indent + 1;
                ++j;
            }
            if (j >= n) {
                i = j;
                break;
            }
            if (src[j] == '\n' || src[j] == '\r' || src[j] == '#') {
                while (j < n && src[j] != '\n') ++j;
                if (j < n) ++j;
                ++line;
                line_begin = j;
                i = j;
                continue;
            }
            if (indent > indents.back()) {
                indents.push_back(indent);
                push(Token::Kind::Indent, "", j);
            } else {
                while (indent < indents.back()) {
                    indents.pop_back();
                    push(Token::Kind::Dedent, "", j);
                }
                if (indent != indents.back()) {
                    throw LexError(line, col(j), "inconsistent indentation");
                }
            }
            i = j;
            at_line_start = false;
            continue;
        }

        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        if (c == '\n') {
            bool continuation = depth > 0 || last_significant_is_comma();
            if (!continuation) {
                push(Token::Kind::Newline, "", i);
                at_line_start = true;
            }
            ++i;
            ++line;
            line_begin = i;
            continue;
        }
        if (digit(c) || (c == '.' && i + 1 < n && digit(src[i + 1]))) {
            size_t start = i;
            while (i < n && digit(src[i])) ++i;
            if (i < n && src[i] == '.') {
                ++i;
                while (i < n && digit(src[i])) ++i;
            }
            if (i < n && (src[i] == 'e' || src[i] == 'E')) {
                size_t mark = i;
                ++i;
                if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
                if (i < n && digit(src[i])) {
                    while (i < n && digit(src[i])) ++i;
                } else {
                    i = mark;  // "1e" is a number followed by an identifier
                }
            }
            std::string text = src.substr(start, i - start);
            push(Token::Kind::Number, text, start, std::strtod(text.c_str(), nullptr));
            continue;
        }
        if (ident_start(c)) {
            size_t start = i;
            while (i < n && ident_char(src[i])) ++i;
            std::string word = src.substr(start, i - start);
            Token::Kind kind = is_keyword(word) ? Token::Kind::Keyword : Token::Kind::Ident;
            push(kind, std::move(word), start);
            continue;
        }
        if (c == '"') {
            size_t start = i;
            ++i;
            std::string value;
            while (true) {
                if (i >= n || src[i] == '\n') {
                    throw LexError(line, col(start), "unterminated string literal");
                }
                char d = src[i++];
                if (d == '"') break;
                if (d == '\\') {
                    if (i >= n) throw LexError(line, col(start), "unterminated string literal");
                    char e = src[i++];
                    switch (e) {
                        case 'n': value += '\n'; break;
                        case 't': value += '\t'; break;
                        case '\\': value += '\\'; break;
                        case '"': value += '"'; break;
                        default:
                            throw LexError(line, col(i - 2),
                                           std::string("unknown escape '\\") + e + "'");
                    }
                } else {
                    value += d;
                }
            }
            push(Token::Kind::String, std::move(value), start);
            continue;
        }
        // Operators, longest first.
        if (i + 1 < n) {
            std::string two = src.substr(i, 2);
            if (two == "==" || two == "!=" || two == "<=" || two == ">=") {
                push(Token::Kind::Op, two, i);
                i += 2;
                continue;
            }
        }
        if (std::string("=(),.+-*/<>:").find(c) != std::string::npos) {
            if (c == '(') ++depth;
            if (c == ')' && depth > 0) --depth;
            push(Token::Kind::Op, std::string(1, c), i);
            ++i;
            continue;
        }
        throw LexError(line, col(i), std::string("illegal character '") + c + "'");
    }

    if (!out.empty() && out.back().kind != Token::Kind::Newline) {
        out.push_back(Token{Token::Kind::Newline, "", 0, line, col(n)});
    }
    while (indents.back() > 0) {
        indents.pop_back();
        out.push_back(Token{Token::Kind::Dedent, "", 0, line, col(n)});
    }
    out.push_back(Token{Token::Kind::End, "", 0, line, col(n)});
    return out;
}

}  // namespace scenium
