#pragma once

#include <string>
#include <vector>

namespace scenium {

struct Token {
    enum class Kind { Keyword, Ident, Number, String, Op, Newline, Indent, Dedent, End };

    Kind kind{};
    std::string text;   // lexeme (decoded value for strings)
    double number = 0;  // value for Number tokens
    int line = 1;
    int column = 1;  // 1-based byte column
};

bool is_keyword(const std::string& word);

// Human-readable token description for error messages ("'at'", "end of line"...).
std::string describe(const Token& t);

// Tokenizes a whole program.  Emits Newline at statement ends (suppressed
// inside brackets and after a trailing comma), Indent/Dedent for indentation
// blocks (tab = 8 columns), and a final End.  Throws LexError.
std::vector<Token> tokenize(const std::string& source);

}  // namespace scenium
