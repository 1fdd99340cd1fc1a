#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace undom {

/// Bad identifiers, malformed thresholds, violated preconditions.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or sampling budget would be (or was) exceeded.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the profile parser. `line` is 1-based; 0 when the error is not tied to a line.
class profile_error : public input_error {
public:
    enum class kind { empty_profile, malformed_header, malformed_ranking, count_mismatch };

    profile_error(kind k, std::size_t line, const std::string& what)
        : input_error(what), kind_(k), line_(line) {}

    kind error_kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    kind kind_;
    std::size_t line_;
};

} // namespace undom
