#ifndef TSA_ERRORS_HPP
#define TSA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsa {

// Precondition violations use std::invalid_argument directly. The types below
// carry the remaining failure categories so callers (the CLI in particular)
// can map them to distinct exit codes.

/// Input lies outside the domain a model can represent (e.g. a displacement
/// smaller than the zero-turn offset).
class OutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// The data cannot determine the requested quantity (degenerate series,
/// a single load level, too few samples).
class IllPosedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed text input. `line` is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::string key, const std::string& message)
        : std::runtime_error(format(line, key, message)), line_(line), key_(std::move(key)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    static std::string format(std::size_t line, const std::string& key, const std::string& message) {
        std::string out = "line " + std::to_string(line);
        if (!key.empty()) out += " (" + key + ")";
        return out + ": " + message;
    }

    std::size_t line_;
    std::string key_;
};

}  // namespace tsa

#endif  // TSA_ERRORS_HPP
