#pragma once

#include <string>

namespace scenium {

// Renders "file:line:col: error: message" followed by the offending source
// line and a caret marking the column.
std::string format_diagnostic(const std::string& source, const std::string& filename,
                              int line, int column, const std::string& message);

}  // namespace scenium
