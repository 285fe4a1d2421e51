#include "minkowski/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "minkowski/errors.hpp"

namespace minkowski {

struct Expression::Node {
    enum class Kind { constant, variable, negate, add, sub, mul, div, pow, sin, cos, exp };
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
    return std::make_shared<const Node>(Node{k, v, std::move(a), std::move(b)});
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("expression: " + msg + " at position " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make(Node::Kind::add, lhs, term());
            } else if (accept('-')) {
                lhs = make(Node::Kind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(Node::Kind::mul, lhs, unary());
            } else if (accept('/')) {
                lhs = make(Node::Kind::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Kind::negate, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (accept('^')) return make(Node::Kind::pow, base, unary());
        return base;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (accept('(')) {
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string_view name = s_.substr(start, pos_ - start);
            if (name == "t") return make(Node::Kind::variable);
            if (name == "pi") return make(Node::Kind::constant, nullptr, nullptr, std::numbers::pi);
            Node::Kind fn{};
            if (name == "sin") {
                fn = Node::Kind::sin;
            } else if (name == "cos") {
                fn = Node::Kind::cos;
            } else if (name == "exp") {
                fn = Node::Kind::exp;
            } else {
                pos_ = start;
                fail("unknown identifier '" + std::string(name) + "'");
            }
            expect('(');
            NodePtr arg = expr();
            expect(')');
            return make(fn, arg);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        double v = 0.0;
        const char* first = s_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
        if (ec != std::errc{}) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return make(Node::Kind::constant, nullptr, nullptr, v);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

double eval(const Node& n, double t) {
    switch (n.kind) {
        case Node::Kind::constant: return n.value;
        case Node::Kind::variable: return t;
        case Node::Kind::negate: return -eval(*n.lhs, t);
        case Node::Kind::add: return eval(*n.lhs, t) + eval(*n.rhs, t);
        case Node::Kind::sub: return eval(*n.lhs, t) - eval(*n.rhs, t);
        case Node::Kind::mul: return eval(*n.lhs, t) * eval(*n.rhs, t);
        case Node::Kind::div: return eval(*n.lhs, t) / eval(*n.rhs, t);
        case Node::Kind::pow: return std::pow(eval(*n.lhs, t), eval(*n.rhs, t));
        case Node::Kind::sin: return std::sin(eval(*n.lhs, t));
        case Node::Kind::cos: return std::cos(eval(*n.lhs, t));
        case Node::Kind::exp: return std::exp(eval(*n.lhs, t));
    }
    return 0.0;
}

}  // namespace

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression Expression::parse(std::string_view text) {
    Parser p(text);
    NodePtr root = p.parse();
    return Expression(std::string(text), std::move(root));
}

double Expression::operator()(double t) const { return eval(*root_, t); }

}  // namespace minkowski
