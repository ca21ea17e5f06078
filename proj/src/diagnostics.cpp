#include "scenium/diagnostics.hpp"

#include <sstream>

namespace scenium {

std::string format_diagnostic(const std::string& source, const std::string& filename,
                              int line, int column, const std::string& message) {
    std::ostringstream out;
    out << filename << ':' << line << ':' << column << ": error: " << message << '\n';

    // Find the requested 1-based line.
    size_t begin = 0;
    for (int l = 1; l < line && begin <= source.size(); ++l) {
        size_t nl = source.find('\n', begin);
        if (nl == std::string::npos) {
            begin = source.size() + 1;
            break;
        }
        begin = nl + 1;
    }
    if (begin > source.size()) return out.str();
    size_t end = source.find('\n', begin);
    if (end == std::string::npos) end = source.size();
    std::string text = source.substr(begin, end - begin);
    out << text << '\n';

    // Tabs are kept in the caret line so it aligns under any tab width.
    std::string caret;
    for (int i = 0; i + 1 < column; ++i) {
        char c = static_cast<size_t>(i) < text.size() ? text[i] : ' ';
        caret += (c == '\t') ? '\t' : ' ';
    }
    caret += '^';
    out << caret << '\n';
    return out.str();
}

}  // namespace scenium
