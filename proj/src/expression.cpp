#include "wroot/expression.hpp"

#include <cctype>
#include <optional>

namespace wroot {

// ---------------------------------------------------------------------------
// Parsing

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression parse()
  {
    Expression e = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const
  {
    throw ParseError("expression '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) + ": " +
                     what);
  }

  void skip_space()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c)
  {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expression parse_sum()
  {
    Expression lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + parse_product();
      } else if (accept('-')) {
        lhs = lhs - parse_product();
      } else {
        return lhs;
      }
    }
  }

  Expression parse_product()
  {
    Expression lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * parse_unary();
      } else if (accept('/')) {
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  Expression parse_unary()
  {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expression parse_power()
  {
    Expression base = parse_primary();
    if (accept('^')) return Expression::make(Expression::Kind::pow, base, parse_unary());
    return base;
  }

  std::optional<Expression> parse_number()
  {
    skip_space();
    const std::size_t start = pos_;
    auto digit = [&](std::size_t i) {
      return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    };
    while (digit(pos_)) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (digit(pos_)) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) {
      pos_ = start;
      return std::nullopt;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t probe = pos_ + 1;
      if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
      if (digit(probe)) {
        pos_ = probe;
        while (digit(pos_)) ++pos_;
      }
    }
    return Expression::constant(Rational::parse(text_.substr(start, pos_ - start)));
  }

  Expression parse_primary()
  {
    if (auto number = parse_number()) return *number;
    skip_space();
    if (accept('(')) {
      Expression inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name.empty()) fail("expected a number, x, or a function");
    if (name == "x") return Expression::variable();
    if (name == "pi") return Expression(std::make_shared<const Expression::Node>(
                           Expression::Node{Expression::Kind::pi, Rational(), nullptr, nullptr}));

    Expression::Kind kind;
    if (name == "exp") {
      kind = Expression::Kind::exp;
    } else if (name == "ln") {
      kind = Expression::Kind::ln;
    } else if (name == "sin") {
      kind = Expression::Kind::sin;
    } else if (name == "cos") {
      kind = Expression::Kind::cos;
    } else {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (!accept('(')) fail("expected '(' after " + name);
    Expression arg = parse_sum();
    if (!accept(')')) fail("expected ')'");
    return Expression::make(kind, arg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text) { return ExpressionParser(text).parse(); }

// ---------------------------------------------------------------------------
// Construction with light constant folding

Expression Expression::constant(const Rational& value)
{
  return Expression(std::make_shared<const Node>(Node{Kind::constant, value, nullptr, nullptr}));
}

Expression Expression::variable()
{
  return Expression(std::make_shared<const Node>(Node{Kind::variable, Rational(), nullptr, nullptr}));
}

Expression Expression::make(Kind kind, const Expression& lhs, const Expression& rhs)
{
  return Expression(std::make_shared<const Node>(Node{kind, Rational(), lhs.node_, rhs.node_}));
}

Expression Expression::make(Kind kind, const Expression& arg)
{
  return Expression(std::make_shared<const Node>(Node{kind, Rational(), arg.node_, nullptr}));
}

bool Expression::is_constant(const Rational& value) const
{
  return node_->kind == Kind::constant && node_->value == value;
}

bool Expression::depends_on_x() const
{
  switch (node_->kind) {
    case Kind::constant:
    case Kind::pi:
      return false;
    case Kind::variable:
      return true;
    default:
      return Expression(node_->lhs).depends_on_x() || (node_->rhs && Expression(node_->rhs).depends_on_x());
  }
}

Expression operator+(const Expression& a, const Expression& b)
{
  using K = Expression::Kind;
  if (a.is_constant(0)) return b;
  if (b.is_constant(0)) return a;
  if (a.kind() == K::constant && b.kind() == K::constant) return Expression::constant(a.node_->value + b.node_->value);
  return Expression::make(K::add, a, b);
}

Expression operator-(const Expression& a, const Expression& b)
{
  using K = Expression::Kind;
  if (b.is_constant(0)) return a;
  if (a.is_constant(0)) return -b;
  if (a.kind() == K::constant && b.kind() == K::constant) return Expression::constant(a.node_->value - b.node_->value);
  return Expression::make(K::sub, a, b);
}

Expression operator*(const Expression& a, const Expression& b)
{
  using K = Expression::Kind;
  if (a.is_constant(0) || b.is_constant(0)) return Expression::constant(0);
  if (a.is_constant(1)) return b;
  if (b.is_constant(1)) return a;
  if (a.kind() == K::constant && b.kind() == K::constant) return Expression::constant(a.node_->value * b.node_->value);
  return Expression::make(K::mul, a, b);
}

Expression operator/(const Expression& a, const Expression& b)
{
  using K = Expression::Kind;
  if (b.is_constant(1)) return a;
  if (a.is_constant(0) && !b.is_constant(0)) return Expression::constant(0);
  if (a.kind() == K::constant && b.kind() == K::constant && !b.node_->value.is_zero()) {
    return Expression::constant(a.node_->value / b.node_->value);
  }
  return Expression::make(K::div, a, b);
}

Expression operator-(const Expression& a)
{
  using K = Expression::Kind;
  if (a.kind() == K::constant) return Expression::constant(-a.node_->value);
  if (a.kind() == K::neg) return Expression(a.node_->lhs);
  return Expression::make(K::neg, a);
}

// ---------------------------------------------------------------------------
// Evaluation and differentiation

Real Expression::evaluate(const Real& x) const
{
  const Node& n = *node_;
  auto lhs = [&] { return Expression(n.lhs).evaluate(x); };
  auto rhs = [&] { return Expression(n.rhs).evaluate(x); };
  switch (n.kind) {
    case Kind::constant:
      return Real(x.context(), n.value);
    case Kind::variable:
      return x;
    case Kind::pi:
      return pi(x.context());
    case Kind::add:
      return lhs() + rhs();
    case Kind::sub:
      return lhs() - rhs();
    case Kind::mul:
      return lhs() * rhs();
    case Kind::div:
      return lhs() / rhs();
    case Kind::pow:
      if (n.rhs->kind == Kind::constant && n.rhs->value.is_integer() && mpz_class(n.rhs->value.numerator()).fits_slong_p()) {
        return wroot::pow(lhs(), n.rhs->value.numerator().get_si());
      }
      return wroot::pow(lhs(), rhs());
    case Kind::neg:
      return -lhs();
    case Kind::exp:
      return wroot::exp(lhs());
    case Kind::ln:
      return wroot::log(lhs());
    case Kind::sin:
      return wroot::sin(lhs());
    case Kind::cos:
      return wroot::cos(lhs());
  }
  throw EvaluationError("corrupt expression node");
}

Expression Expression::derivative() const
{
  const Node& n = *node_;
  const Expression u(n.lhs);
  switch (n.kind) {
    case Kind::constant:
    case Kind::pi:
      return constant(0);
    case Kind::variable:
      return constant(1);
    case Kind::add:
      return u.derivative() + Expression(n.rhs).derivative();
    case Kind::sub:
      return u.derivative() - Expression(n.rhs).derivative();
    case Kind::mul: {
      const Expression v(n.rhs);
      return u.derivative() * v + u * v.derivative();
    }
    case Kind::div: {
      const Expression v(n.rhs);
      if (!v.depends_on_x()) return u.derivative() / v;
      return (u.derivative() * v - u * v.derivative()) / make(Kind::pow, v, constant(2));
    }
    case Kind::pow: {
      const Expression v(n.rhs);
      if (!v.depends_on_x()) {
        const Expression lowered = v.kind() == Kind::constant ? constant(v.node_->value - 1) : v - constant(1);
        const Expression power = lowered.is_constant(1) ? u : make(Kind::pow, u, lowered);
        return v * power * u.derivative();
      }
      return *this * (v.derivative() * make(Kind::ln, u) + v * u.derivative() / u);
    }
    case Kind::neg:
      return -u.derivative();
    case Kind::exp:
      return *this * u.derivative();
    case Kind::ln:
      return u.derivative() / u;
    case Kind::sin:
      return make(Kind::cos, u) * u.derivative();
    case Kind::cos:
      return -(make(Kind::sin, u) * u.derivative());
  }
  throw EvaluationError("corrupt expression node");
}

namespace {

int precedence(Expression::Kind kind, const Rational& value)
{
  using K = Expression::Kind;
  switch (kind) {
    case K::add:
    case K::sub:
      return 1;
    case K::mul:
    case K::div:
      return 2;
    case K::neg:
      return 3;
    case K::pow:
      return 4;
    case K::constant:
      if (value.sign() < 0) return 3;
      return value.is_integer() ? 5 : 2;
    default:
      return 5;
  }
}

}  // namespace

std::string Expression::to_string() const
{
  const Node& n = *node_;
  auto wrap = [](const NodePtr& child, bool parens) {
    const std::string s = Expression(child).to_string();
    return parens ? "(" + s + ")" : s;
  };
  auto prec = [](const NodePtr& child) { return precedence(child->kind, child->value); };
  const int self = precedence(n.kind, n.value);
  auto binary = [&](const char* op, bool right_strict) {
    return wrap(n.lhs, prec(n.lhs) < self) + op +
           wrap(n.rhs, right_strict ? prec(n.rhs) <= self : prec(n.rhs) < self);
  };
  switch (n.kind) {
    case Kind::constant:
      return n.value.to_string();
    case Kind::variable:
      return "x";
    case Kind::pi:
      return "pi";
    case Kind::add:
      return binary(" + ", false);
    case Kind::sub:
      return binary(" - ", true);
    case Kind::mul:
      return binary("*", false);
    case Kind::div:
      return binary("/", true);
    case Kind::pow:
      return wrap(n.lhs, prec(n.lhs) <= self) + "^" + wrap(n.rhs, prec(n.rhs) < self);
    case Kind::neg:
      return "-" + wrap(n.lhs, prec(n.lhs) < self);
    case Kind::exp:
      return "exp(" + Expression(n.lhs).to_string() + ")";
    case Kind::ln:
      return "ln(" + Expression(n.lhs).to_string() + ")";
    case Kind::sin:
      return "sin(" + Expression(n.lhs).to_string() + ")";
    case Kind::cos:
      return "cos(" + Expression(n.lhs).to_string() + ")";
  }
  return "?";
}

}  // namespace wroot
