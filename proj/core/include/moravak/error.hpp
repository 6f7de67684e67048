#pragma once

#include <stdexcept>
#include <string>

namespace moravak {

/// Failure categories. The CLI maps each category onto a process exit code.
enum class ErrorCategory { parse, validation, computation, hypothesis };

enum class ErrorKind {
    parse,
    ill_formed_element,
    degree_cap_exceeded,
    invalid_algebra,
    action_not_checked,
    invalid_action,
    not_integral,
    malformed_exponent_list,
    not_grouplike,
    invalid_index,
    invalid_module,
    invalid_tensor_module,
    wrong_twist_degree,
    inconsistent_action,
    integral_data_required,
    not_two_typical,
    invalid_fgl,
    missing_class,
    invalid_manifold,
    hypothesis_violated,
    anomaly_relation_violated,
    invalid_pair,
};

const char* to_string(ErrorKind kind);
ErrorCategory category_of(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_of(kind_); }

private:
    ErrorKind kind_;
};

/// Parse failure anchored at a line and column of the input (1-based, 0 = unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0, int column = 0);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace moravak
