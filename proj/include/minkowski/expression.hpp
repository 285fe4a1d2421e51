#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace minkowski {

// A real function of t parsed from the grammar
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | '+' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 't' | 'pi' | ('sin' | 'cos' | 'exp') '(' expr ')' | '(' expr ')'
// Exponentiation is right-associative and binds tighter than unary minus on
// its left operand, so -t^2 = -(t^2). Whitespace is ignored.
class Expression {
public:
    // Throws ParseError with the offending position on malformed input.
    static Expression parse(std::string_view text);

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] const std::string& text() const noexcept { return text_; }

    struct Node;

private:
    Expression(std::string text, std::shared_ptr<const Node> root);

    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace minkowski
