#include "hilfer/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace hilfer {

enum class Op { constant, variable, neg, add, sub, mul, div, pow, call };
enum class Fn { abs, exp, log, sqrt, sin, cos, pow, min, max, sat };

struct Expression::Node {
  Op op = Op::constant;
  double value = 0.0;
  std::size_t slot = 0;
  Fn fn = Fn::abs;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

struct FnInfo {
  std::string_view name;
  Fn fn;
  std::size_t arity;
};

constexpr FnInfo kFunctions[] = {
    {"abs", Fn::abs, 1},   {"exp", Fn::exp, 1},   {"log", Fn::log, 1}, {"sqrt", Fn::sqrt, 1},
    {"sin", Fn::sin, 1},   {"cos", Fn::cos, 1},   {"pow", Fn::pow, 2}, {"min", Fn::min, 2},
    {"max", Fn::max, 2},   {"sat", Fn::sat, 2},
};

NodePtr make(Op op, std::vector<NodePtr> args = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExpressionError("expression '" + std::string(src_) + "' at column " + std::to_string(pos_ + 1) +
                          ": " + msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Op::add, {lhs, term()});
      else if (accept('-'))
        lhs = make(Op::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Op::mul, {lhs, unary()});
      else if (accept('/'))
        lhs = make(Op::div, {lhs, unary()});
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make(Op::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (accept('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    double v = 0.0;
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec != std::errc() || ptr == first) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::constant;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);

    if (accept('(')) {
      auto it = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                             [&](const FnInfo& f) { return f.name == name; });
      if (it == std::end(kFunctions)) fail("unknown function '" + std::string(name) + "'");
      std::vector<NodePtr> args{expr()};
      while (accept(',')) args.push_back(expr());
      expect(')');
      if (args.size() != it->arity)
        fail("function '" + std::string(name) + "' takes " + std::to_string(it->arity) + " argument(s)");
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::call;
      n->fn = it->fn;
      n->args = std::move(args);
      return n;
    }

    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto n = std::make_shared<Expression::Node>();
        n->op = Op::variable;
        n->slot = i;
        return n;
      }
    }
    if (name == "pi") {
      auto n = std::make_shared<Expression::Node>();
      n->value = std::numbers::pi;
      return n;
    }
    fail("unknown variable '" + std::string(name) + "'");
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, std::span<const double> v) {
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::variable:
      return v[n.slot];
    case Op::neg:
      return -eval_node(*n.args[0], v);
    case Op::add:
      return eval_node(*n.args[0], v) + eval_node(*n.args[1], v);
    case Op::sub:
      return eval_node(*n.args[0], v) - eval_node(*n.args[1], v);
    case Op::mul:
      return eval_node(*n.args[0], v) * eval_node(*n.args[1], v);
    case Op::div:
      return eval_node(*n.args[0], v) / eval_node(*n.args[1], v);
    case Op::pow:
      return std::pow(eval_node(*n.args[0], v), eval_node(*n.args[1], v));
    case Op::call: {
      const double a = eval_node(*n.args[0], v);
      switch (n.fn) {
        case Fn::abs:
          return std::abs(a);
        case Fn::exp:
          return std::exp(a);
        case Fn::log:
          return std::log(a);
        case Fn::sqrt:
          return std::sqrt(a);
        case Fn::sin:
          return std::sin(a);
        case Fn::cos:
          return std::cos(a);
        case Fn::pow:
          return std::pow(a, eval_node(*n.args[1], v));
        case Fn::min:
          return std::min(a, eval_node(*n.args[1], v));
        case Fn::max:
          return std::max(a, eval_node(*n.args[1], v));
        case Fn::sat:
          return a / (eval_node(*n.args[1], v) * (1.0 + a));
      }
    }
  }
  return 0.0;
}

bool node_uses(const Expression::Node& n, std::size_t slot) {
  if (n.op == Op::variable) return n.slot == slot;
  return std::any_of(n.args.begin(), n.args.end(), [&](const NodePtr& a) { return node_uses(*a, slot); });
}

}  // namespace

Expression::Expression(std::string source, std::vector<std::string> variables, std::shared_ptr<const Node> root)
    : source_(std::move(source)), variables_(std::move(variables)), root_(std::move(root)) {}

Expression Expression::parse(std::string_view source, std::vector<std::string> variables) {
  Parser p(source, variables);
  auto root = p.parse();
  return Expression(std::string(source), std::move(variables), std::move(root));
}

double Expression::eval(std::span<const double> values) const {
  if (values.size() != variables_.size())
    throw ExpressionError("expression '" + source_ + "': wrong number of variable values");
  return eval_node(*root_, values);
}

bool Expression::uses(std::string_view variable) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == variable) return node_uses(*root_, i);
  return false;
}

}  // namespace hilfer
