#pragma once

#include <cstddef>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace enrichfp {

enum class ErrorKind {
    input,
    singularity,
    configuration,
    lookup,
    parse,
    validation,
    unsupported_family,
    inconclusive,
    divergence,
    precondition,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::input: return "input";
        case ErrorKind::singularity: return "singularity";
        case ErrorKind::configuration: return "configuration";
        case ErrorKind::lookup: return "lookup";
        case ErrorKind::parse: return "parse";
        case ErrorKind::validation: return "validation";
        case ErrorKind::unsupported_family: return "unsupported-family";
        case ErrorKind::inconclusive: return "inconclusive";
        case ErrorKind::divergence: return "divergence";
        case ErrorKind::precondition: return "precondition";
    }
    return "unknown";
}

/// Compact "%g" rendering of a number for error messages.
inline std::string show(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// Every failure raised by the library carries a category so callers (and the
/// CLI exit-status contract) can dispatch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Expression grammar failure with a 1-based column into the offending text.
class ParseError : public Error {
public:
    ParseError(std::size_t column, const std::string& message, const std::string& context = {})
        : Error(ErrorKind::parse, (context.empty() ? std::string() : context + ": ") + "column " +
                                      std::to_string(column) + ": " + message),
          column_(column),
          detail_(message),
          context_(context) {}

    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }
    const std::string& context() const noexcept { return context_; }

private:
    std::size_t column_;
    std::string detail_;
    std::string context_;
};

/// True for the categories that mean "the configuration is wrong" rather than
/// "the mathematics failed".
constexpr bool is_config_error(ErrorKind kind) noexcept {
    return kind == ErrorKind::configuration || kind == ErrorKind::lookup ||
           kind == ErrorKind::parse || kind == ErrorKind::validation;
}

}  // namespace enrichfp
