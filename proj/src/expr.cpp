#include "enrichfp/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "enrichfp/error.hpp"

namespace enrichfp {

struct Expression::Node {
    enum class Kind { constant, variable, neg, add, sub, mul, div, abs, min, max };

    Kind kind = Kind::constant;
    double value = 0.0;
    std::size_t var = 0;
    std::vector<std::unique_ptr<Node>> args;

    double eval(std::span<const double> x) const {
        switch (kind) {
            case Kind::constant: return value;
            case Kind::variable: return x[var];
            case Kind::neg: return -args[0]->eval(x);
            case Kind::add: return args[0]->eval(x) + args[1]->eval(x);
            case Kind::sub: return args[0]->eval(x) - args[1]->eval(x);
            case Kind::mul: return args[0]->eval(x) * args[1]->eval(x);
            case Kind::div: return args[0]->eval(x) / args[1]->eval(x);
            case Kind::abs: return std::abs(args[0]->eval(x));
            case Kind::min: {
                double m = args[0]->eval(x);
                for (std::size_t i = 1; i < args.size(); ++i) m = std::min(m, args[i]->eval(x));
                return m;
            }
            case Kind::max: {
                double m = args[0]->eval(x);
                for (std::size_t i = 1; i < args.size(); ++i) m = std::max(m, args[i]->eval(x));
                return m;
            }
        }
        return std::numeric_limits<double>::quiet_NaN();
    }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind kind, std::vector<NodePtr> args = {}) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->args = std::move(args);
    return n;
}

class Parser {
public:
    Parser(std::string_view text, std::size_t n_vars) : text_(text), n_vars_(n_vars) {}

    NodePtr parse() {
        skip_ws();
        if (at_end()) fail("empty expression");
        NodePtr root = expr();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }

    bool at_end() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (at_end()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "', found '" + text_[pos_] + "'");
        }
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = binary(Node::Kind::add, std::move(lhs), term());
            } else if (accept('-')) {
                lhs = binary(Node::Kind::sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = binary(Node::Kind::mul, std::move(lhs), unary());
            } else if (accept('/')) {
                lhs = binary(Node::Kind::div, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            std::vector<NodePtr> a;
            a.push_back(unary());
            return make(Node::Kind::neg, std::move(a));
        }
        if (accept('+')) return unary();
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (at_end()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        double v = 0.0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (res.ec != std::errc{}) fail("malformed number");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        if (!std::isfinite(v)) {
            pos_ = start;
            fail("number out of range");
        }
        auto n = make(Node::Kind::constant);
        n->value = v;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name.size() > 1 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            std::size_t idx = 0;
            std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            if (idx < 1 || idx > n_vars_) {
                pos_ = start;
                fail("variable '" + std::string(name) + "' out of range x1..x" +
                     std::to_string(n_vars_));
            }
            auto n = make(Node::Kind::variable);
            n->var = idx - 1;
            return n;
        }

        Node::Kind kind{};
        std::size_t min_args = 1, max_args = 1;
        if (name == "abs") {
            kind = Node::Kind::abs;
        } else if (name == "min" || name == "max") {
            kind = name == "min" ? Node::Kind::min : Node::Kind::max;
            min_args = 2;
            max_args = std::numeric_limits<std::size_t>::max();
        } else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }

        expect('(');
        std::vector<NodePtr> args;
        args.push_back(expr());
        while (accept(',')) args.push_back(expr());
        expect(')');
        if (args.size() < min_args || args.size() > max_args) {
            pos_ = start;
            fail("wrong number of arguments to " + std::string(name));
        }
        return make(kind, std::move(args));
    }

    static NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
        std::vector<NodePtr> args;
        args.push_back(std::move(a));
        args.push_back(std::move(b));
        return make(k, std::move(args));
    }

    std::string_view text_;
    std::size_t n_vars_;
    std::size_t pos_ = 0;
};

constexpr std::array<std::pair<GuardOp, std::string_view>, 6> kGuardOps{{
    {GuardOp::eq, "=="},
    {GuardOp::ne, "!="},
    {GuardOp::lt, "<"},
    {GuardOp::le, "<="},
    {GuardOp::gt, ">"},
    {GuardOp::ge, ">="},
}};

bool holds(GuardOp op, double v) {
    switch (op) {
        case GuardOp::eq: return v == 0.0;
        case GuardOp::ne: return v != 0.0;
        case GuardOp::lt: return v < 0.0;
        case GuardOp::le: return v <= 0.0;
        case GuardOp::gt: return v > 0.0;
        case GuardOp::ge: return v >= 0.0;
    }
    return false;
}

Expression compile_one(const std::string& text, std::size_t dim, const std::string& context) {
    try {
        return Expression::parse(text, dim);
    } catch (const ParseError& e) {
        throw ParseError(e.column(), e.detail(), context + " \"" + text + "\"");
    }
}

std::vector<Expression> compile_components(const std::vector<std::string>& texts,
                                           std::size_t dim, const std::string& context) {
    if (texts.size() != dim) {
        throw Error(ErrorKind::configuration, context + " has " + std::to_string(texts.size()) +
                                                  " components, expected " + std::to_string(dim));
    }
    std::vector<Expression> out;
    out.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out.push_back(compile_one(texts[i], dim, context + " component " + std::to_string(i + 1)));
    }
    return out;
}

}  // namespace

Expression Expression::parse(std::string_view text, std::size_t n_vars) {
    Parser p(text, n_vars);
    NodePtr root = p.parse();
    return Expression(std::string(text), std::shared_ptr<const Node>(std::move(root)));
}

double Expression::eval(std::span<const double> vars) const { return root_->eval(vars); }

std::string_view to_string(GuardOp op) noexcept {
    for (const auto& [k, n] : kGuardOps) {
        if (k == op) return n;
    }
    return "?";
}

std::optional<GuardOp> parse_guard_op(std::string_view s) noexcept {
    for (const auto& [k, n] : kGuardOps) {
        if (n == s) return k;
    }
    return std::nullopt;
}

PiecewiseMap PiecewiseMap::compile(const MapText& text, std::size_t dim) {
    PiecewiseMap m;
    for (std::size_t i = 0; i < text.cases.size(); ++i) {
        const auto& c = text.cases[i];
        const std::string ctx = "case " + std::to_string(i + 1);
        auto op = parse_guard_op(c.op);
        if (!op) {
            throw Error(ErrorKind::configuration,
                        ctx + ": unknown guard comparison '" + c.op + "' (use ==, !=, <, <=, >, >=)");
        }
        m.cases_.push_back(Case{compile_one(c.guard, dim, ctx + " guard"), *op,
                                compile_components(c.components, dim, ctx)});
    }
    m.otherwise_ = compile_components(text.components, dim, "map");
    return m;
}

Point PiecewiseMap::operator()(const Point& x) const {
    const std::vector<Expression>* chosen = &otherwise_;
    for (const auto& c : cases_) {
        if (holds(c.op, c.guard.eval(x.coords()))) {
            chosen = &c.components;
            break;
        }
    }
    std::vector<double> out(chosen->size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*chosen)[i].eval(x.coords());
    return out;
}

}  // namespace enrichfp
