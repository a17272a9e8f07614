#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "enrichfp/point.hpp"

namespace enrichfp {

/// A compiled arithmetic expression over x1..xn.
///
/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | primary
///   primary := number | 'x' index | func '(' expr (',' expr)* ')' | '(' expr ')'
///   func    := abs/1 | min/2+ | max/2+
///
/// Parse failures throw ParseError with a 1-based column.
class Expression {
public:
    struct Node;

    static Expression parse(std::string_view text, std::size_t n_vars);

    double eval(std::span<const double> vars) const;
    const std::string& text() const noexcept { return text_; }

private:
    Expression(std::string text, std::shared_ptr<const Node> root)
        : text_(std::move(text)), root_(std::move(root)) {}

    std::string text_;
    std::shared_ptr<const Node> root_;
};

enum class GuardOp { eq, ne, lt, le, gt, ge };

std::string_view to_string(GuardOp op) noexcept;
std::optional<GuardOp> parse_guard_op(std::string_view s) noexcept;

/// Source text of a component-wise, optionally piecewise map. Cases are tried
/// in order; the first whose `guard <op> 0` holds supplies the components,
/// otherwise `components` is used.
struct MapText {
    struct Case {
        std::string guard;
        std::string op = "!=";
        std::vector<std::string> components;
        friend bool operator==(const Case&, const Case&) = default;
    };

    std::vector<Case> cases;
    std::vector<std::string> components;

    friend bool operator==(const MapText&, const MapText&) = default;
};

class PiecewiseMap {
public:
    /// Throws ParseError (expression text) or Error(configuration) when a
    /// component list does not have `dim` entries.
    static PiecewiseMap compile(const MapText& text, std::size_t dim);

    Point operator()(const Point& x) const;

private:
    struct Case {
        Expression guard;
        GuardOp op;
        std::vector<Expression> components;
    };

    std::vector<Case> cases_;
    std::vector<Expression> otherwise_;
};

}  // namespace enrichfp
