// error.hpp
// Exception hierarchy shared across the toolkit. The CLI maps these to exit
// codes: parse_error -> 2, precondition_error -> 3, budget_error -> 4.
#pragma once

#include <stdexcept>
#include <string>

namespace atyp {

struct parse_error : std::runtime_error {
    int line = 0;
    int column = 0;
    parse_error(const std::string& msg, int line_, int column_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
    explicit parse_error(const std::string& msg) : std::runtime_error("parse error: " + msg) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg)
        : std::runtime_error("precondition violated: " + msg) {}
};

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg)
        : std::runtime_error("computation budget exhausted: " + msg) {}
};

struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg)
        : std::runtime_error("internal error: " + msg) {}
};

}  // namespace atyp
