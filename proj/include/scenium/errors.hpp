#pragma once

#include <stdexcept>
#include <string>

namespace scenium {

// Base for all errors raised by the toolkit.  Everything carries a plain
// message; source-located errors add line/column.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ------------------------------------------------------------- language ----

struct LexError : Error {
    int line;
    int column;
    LexError(int line_, int col_, const std::string& msg)
        : Error(msg), line(line_), column(col_) {}
};

struct ParseError : Error {
    int line;
    int column;
    std::string expected;
    std::string found;
    ParseError(int line_, int col_, std::string expected_, std::string found_)
        : Error("expected " + expected_ + ", found " + found_),
          line(line_), column(col_),
          expected(std::move(expected_)), found(std::move(found_)) {}
};

// ------------------------------------------------------------- geometry ----

struct DegenerateDirection : Error {
    using Error::Error;
};

struct MeshFormatError : Error {
    using Error::Error;
};

struct NonWatertight : Error {
    using Error::Error;
};

struct EmptyRegionError : Error {
    using Error::Error;
};

struct NoProjection : Error {
    using Error::Error;
};

// ----------------------------------------------------------- specifiers ----

struct UnknownSpecifier : Error {
    using Error::Error;
};

struct ConflictError : Error {
    using Error::Error;
};

struct CycleError : Error {
    using Error::Error;
};

struct ModifyWithoutBase : Error {
    using Error::Error;
};

// -------------------------------------------------------------- runtime ----

// Scenario-level evaluation problems (bad types, unknown names, ...).
struct EvalError : Error {
    using Error::Error;
};

struct MaxRejectionsExceeded : Error {
    std::string cause;  // most frequent rejection cause
    MaxRejectionsExceeded(const std::string& msg, std::string cause_)
        : Error(msg), cause(std::move(cause_)) {}
};

struct EmptySignal : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace scenium
