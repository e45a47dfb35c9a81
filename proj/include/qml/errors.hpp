#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qml {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error{message + " at position " + std::to_string(position)},
          message_{message}, position_{position} {}

    /// The diagnostic without the position suffix.
    [[nodiscard]] const std::string& message() const noexcept { return message_; }
    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::string message_;
    std::size_t position_;
};

/// Structurally broken input: out-of-range world, bad model file.
class MalformedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotAdmissible : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OutsideUniverse : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotDerivable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qml
