#ifndef LEAVITT_ERRORS_HPP
#define LEAVITT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace leavitt {

/// Thrown when a text input (graph file, path assignment, family file,
/// element expression, ring spec string) does not parse.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Thrown when an operation's stated precondition is violated (partition
/// not covering, Condition (L) failing, mismatched algebras, ...).
class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace leavitt

#endif
