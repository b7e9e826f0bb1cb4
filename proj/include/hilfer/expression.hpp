#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hilfer {

class ExpressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
 * Small arithmetic expression language used for right-hand sides, delays,
 * histories and impulse maps in problem files.
 *
 *   numbers     decimal literals, 1.5e-3
 *   operators   + - * / ^ (right associative), unary minus, parentheses
 *   functions   abs exp log sqrt sin cos pow(a,b) min(a,b) max(a,b)
 *               sat(x,c) = x / (c (1 + x))
 *   constants   pi
 *
 * Variable names are fixed at parse time; eval() takes their values in the
 * same order.
 */
class Expression {
 public:
  static Expression parse(std::string_view source, std::vector<std::string> variables);

  double eval(std::span<const double> values) const;

  const std::string& source() const noexcept { return source_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  // True if the variable appears anywhere in the expression.
  bool uses(std::string_view variable) const;

  struct Node;

 private:
  Expression(std::string source, std::vector<std::string> variables, std::shared_ptr<const Node> root);

  std::string source_;
  std::vector<std::string> variables_;
  std::shared_ptr<const Node> root_;
};

}  // namespace hilfer
