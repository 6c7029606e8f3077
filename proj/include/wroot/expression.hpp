#pragma once

// Scalar expressions in one variable x, used for user-defined problems.
// Grammar: numbers, x, pi, + - * / ^, unary minus, exp ln sin cos, parens.

#include <memory>
#include <string>
#include <string_view>

#include "wroot/numerics.hpp"

namespace wroot {

class Expression {
 public:
  enum class Kind { constant, variable, pi, add, sub, mul, div, pow, neg, exp, ln, sin, cos };

  static Expression parse(std::string_view text);

  static Expression constant(const Rational& value);
  static Expression variable();

  Real evaluate(const Real& x) const;
  Expression derivative() const;
  std::string to_string() const;

  Kind kind() const { return node_->kind; }
  bool depends_on_x() const;

 private:
  struct Node {
    Kind kind;
    Rational value;  // constant only
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Expression(NodePtr node) : node_(std::move(node)) {}

  static Expression make(Kind kind, const Expression& lhs, const Expression& rhs);
  static Expression make(Kind kind, const Expression& arg);
  bool is_constant(const Rational& value) const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);

  friend class ExpressionParser;

  NodePtr node_;
};

}  // namespace wroot
