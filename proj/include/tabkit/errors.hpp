#pragma once

#include <stdexcept>
#include <string>

namespace tabkit {

/// Structural misuse of a table: unknown field, ragged input, bad shape.
class TableError : public std::runtime_error {
public:
    explicit TableError(const std::string& what) : std::runtime_error(what) {}
};

/// Cleanup-script syntax or execution failure.
class ScriptError : public std::runtime_error {
public:
    explicit ScriptError(const std::string& what) : std::runtime_error(what) {}
};

/// File ingestion/emission failure; carries a line number when one is known.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what, size_t line = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

} // namespace tabkit
