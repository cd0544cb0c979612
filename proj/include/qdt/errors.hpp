#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdt {

// Tree-text parse failure. `position` is the 1-based character offset of
// the offending token (or one past the end for truncated input).
class TreeParseError : public std::runtime_error {
public:
    TreeParseError(std::size_t position, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + what),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// CSV content failure. `line` is 1-based and counts the header line.
class CsvParseError : public std::runtime_error {
public:
    CsvParseError(std::size_t line, const std::string& what)
        : std::runtime_error("csv error at line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qdt
